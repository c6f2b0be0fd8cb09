"""Verification suites run by ``biased-eur verify``.

Every suite returns :class:`~biased_eur.oracle.VerificationReport` rows. A
run passes iff no row reports a violation. All randomness is derived from
the single ``seed``, so a fixed seed gives an identical report.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .math_core import (
    binomial_tail,
    bounded_binary_entropy,
    hamming_ball_size,
    hoeffding_tail_bound,
)
from .oracle import (
    VerificationReport,
    all_words,
    bell_superposition,
    build_depolarizing_state,
    random_amplitudes,
    verify_hoeffding_step,
    verify_ideal_projection,
    verify_lemma3,
    verify_lemma3_helstrom,
    verify_overlaps,
    verify_superposition_lemma,
)
from .oracle.states import trial_rng
from .sampling import (
    balanced_word,
    classical_error_bound,
    exact_error_probability,
    ideal_word_binary,
    ideal_word_quaternary,
    monte_carlo_failure_estimate,
    reduce_quaternary_to_binary,
)

TOL = 1e-12

LOW_ERROR_CONFIGS = ((1, 0.0), (2, 0.0), (3, 1 / 3), (3, 0.0))
HELSTROM_QS = (0.0, 1.0)
SUPERPOSITION_CONFIGS = ((2, 0.0), (2, 0.2), (3, 0.0), (3, 0.35))
MONTE_CARLO_CONFIGS = ((1000, 100, 0.2), (2000, 200, 0.15))
PROJECTION_CONFIGS = ((3, 1, 0.6), (4, 1, 0.7))
GAP_CONFIGS = (
    (1, 0.1, 0.5), (2, 0.1, 0.0), (2, 0.2, 0.5), (3, 0.2, 0.5), (3, 0.3, 0.34),
)
CORRUPT_OFFSET = 1.0


def check_hamming_balls(n_max: int = 16) -> VerificationReport:
    """Exhaustive ball sizes against ``2^(n ĥ(r/n))`` for every ``n <= n_max`` and radius."""
    worst = -math.inf
    violations = 0
    cases = 0
    for n in range(1, n_max + 1):
        words = np.arange(2**n)
        weights = ((words[:, None] >> np.arange(n)) & 1).sum(axis=1)
        sizes = np.cumsum(np.bincount(weights, minlength=n + 1))
        for r in range(n + 1):
            size = int(sizes[r])
            gap = math.log2(size) - n * bounded_binary_entropy(r / n)
            worst = max(worst, gap)
            cases += 1
            if gap > TOL or size != hamming_ball_size(n, r):
                violations += 1
    return VerificationReport(
        "hamming_ball", {"n_max": n_max}, worst, 0.0, 0, cases, violations, "<=",
    )


def check_hoeffding_dominance(
    ms=(10, 100, 1000), ps=(0.01, 0.04, 0.16), points: int = 50
) -> VerificationReport:
    """``Pr[Bin(m, p) >= ceil(m nu)] <= exp(-2 m (nu - p)^2)`` on a grid of ``nu`` in ``[p, 1/2]``."""
    worst = -math.inf
    violations = 0
    cases = 0
    for m, p in itertools.product(ms, ps):
        for nu in np.linspace(p, 0.5, points):
            k = math.ceil(m * nu - 1e-9)
            gap = binomial_tail(m, p, k) - hoeffding_tail_bound(m, p, float(nu))
            worst = max(worst, gap)
            cases += 1
            if gap > TOL:
                violations += 1
    return VerificationReport(
        "hoeffding_dominance", {"ms": "/".join(map(str, ms)), "ps": "/".join(map(str, ps))},
        worst, 0.0, 0, cases, violations, "<=",
    )


def check_monte_carlo(
    N: int, m: int, delta: float, trials: int, seed: int
) -> VerificationReport:
    """Empirical failure rate on the balanced word against the analytic bound plus three standard errors."""
    report = monte_carlo_failure_estimate(balanced_word(N), m, delta, trials, seed)
    limit = report.analytic_bound + 3.0 * report.standard_error
    return VerificationReport(
        "sampling_monte_carlo", {"N": N, "m": m, "delta": delta},
        report.empirical_estimate, limit, seed, trials,
        int(not report.within_bound()), "<=",
    )


def check_exact_sampling_error(
    N_max: int = 60, deltas=(0.05, 0.1, 0.2, 0.3, 0.5, 0.8)
) -> VerificationReport:
    """Exact worst-case failure probability against the analytic bound for all ``m < N/2``."""
    worst = -math.inf
    violations = 0
    cases = 0
    for N in range(3, N_max + 1):
        for m in range(1, (N - 1) // 2 + 1):
            for delta in deltas:
                gap = exact_error_probability(N, m, delta) - classical_error_bound(N, m, delta)
                worst = max(worst, gap)
                cases += 1
                if gap > TOL:
                    violations += 1
    return VerificationReport(
        "sampling_exact", {"N_max": N_max, "deltas": len(deltas)},
        worst, 0.0, 0, cases, violations, "<=",
    )


def check_quaternary_reduction(N_max: int = 6, delta: float = 0.25) -> VerificationReport:
    """Quaternary ideal words coincide with binary ideal words of ``q mod 2``, exhaustively."""
    violations = 0
    cases = 0
    for N in range(3, N_max + 1):
        subsets = [
            t for m in range(1, (N - 1) // 2 + 1)
            for t in itertools.combinations(range(1, N + 1), m)
        ]
        for q in itertools.product(range(4), repeat=N):
            reduced = reduce_quaternary_to_binary(q)
            for t in subsets:
                cases += 1
                if ideal_word_quaternary(q, t, delta) != ideal_word_binary(reduced, t, delta):
                    violations += 1
    return VerificationReport(
        "quaternary_reduction", {"N_max": N_max, "delta": delta},
        float(violations), 0.0, 0, cases, violations, "<=",
    )


def check_ideal_projection(
    N: int, m: int, delta: float, trials: int, seed: int
) -> VerificationReport:
    """Ideal-subspace projection on random states, alternating orthogonal and trivial environments."""
    words = all_words(N)
    worst = 0.0
    bound = math.sqrt(exact_error_probability(N, m, delta))
    violations = 0
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        amps = random_amplitudes(rng, len(words))
        if trial % 2 == 0:
            state = build_depolarizing_state(N, words, amps)
        else:
            state = bell_superposition(N, words, amps)
        report = verify_ideal_projection(state, N, m, delta)
        worst = max(worst, report.measured)
        violations += report.violations
    return VerificationReport(
        "ideal_projection", {"N": N, "m": m, "delta": delta},
        worst, bound, seed, trials, violations, "<=",
    )


def _projection_trials(trials: int) -> int:
    # each draw enumerates every subset on up to 16 qubits
    return max(1, min(trials, 20))


def run_suites(
    trials: int = 1000, seed: int = 0, mc_trials: int = 100_000, corrupt: bool = False
) -> list[VerificationReport]:
    """Run every suite and return its report rows in a fixed order.

    ``corrupt`` inflates the first low-error entropy bound so that it must
    fail; it exists to test the failure path end to end.
    """
    if trials < 1 or mc_trials < 1:
        raise ValueError("trials and mc_trials must be positive")
    reports = [verify_overlaps(np.linspace(-0.5, 0.5, 101))]
    for k, (n, Q) in enumerate(LOW_ERROR_CONFIGS):
        offset = CORRUPT_OFFSET if corrupt and k == 0 else 0.0
        reports.append(verify_lemma3(n, Q, trials, seed + k, bound_offset=offset))
    for k, Q in enumerate(HELSTROM_QS):
        for environment in ("orthogonal", "random"):
            reports.append(verify_lemma3_helstrom(Q, trials, seed + 10 + k, environment))
    for k, (n, b) in enumerate(SUPERPOSITION_CONFIGS):
        reports.append(verify_superposition_lemma(n, None, trials, seed + 20 + k, b))
    reports.append(check_hamming_balls())
    reports.append(check_hoeffding_dominance())
    for k, (N, m, delta) in enumerate(MONTE_CARLO_CONFIGS):
        reports.append(check_monte_carlo(N, m, delta, mc_trials, seed + 30 + k))
    reports.append(check_exact_sampling_error())
    reports.append(check_quaternary_reduction())
    for k, (N, m, delta) in enumerate(PROJECTION_CONFIGS):
        reports.append(
            check_ideal_projection(N, m, delta, _projection_trials(trials), seed + 40 + k)
        )
    for k, (m, b, nu) in enumerate(GAP_CONFIGS):
        reports.append(verify_hoeffding_step(m, b, nu, min(trials, 100), seed + 50 + k))
    return reports
