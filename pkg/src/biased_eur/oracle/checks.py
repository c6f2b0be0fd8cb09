"""Desk-scale verification of the structural claims behind the entropy bound.

Each check draws seeded random states, evaluates the relevant quantity
exactly, and compares it to the claimed bound. Trials use independent
generators seeded from ``(seed, trial index)``.

Conditional min entropy with a non-trivial environment is only evaluated
where it has a closed form: a single classical bit (Helstrom). For more
signals the environment is trivial and the min entropy is ``-log2 max p``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..math_core import (
    as_word_array,
    binomial_tail,
    bounded_binary_entropy,
    count_symbols,
    hoeffding_tail_bound,
)
from ..sampling import (
    classical_error_bound,
    exact_error_probability,
    ideal_word_quaternary,
)
from ..uncertainty import as_bias
from .measure import (
    conditional_min_entropy_bit,
    measure_and_trace,
    min_entropy_classical,
)
from .states import (
    StateVector,
    all_words,
    bell_superposition,
    build_basis,
    build_depolarizing_state,
    overlap_matrix,
    random_amplitudes,
    trial_rng,
    with_environment,
)

TOL = 1e-10


@dataclass
class VerificationReport:
    """Outcome of one verification claim.

    ``measured`` is the worst value seen across trials and ``bound`` the value
    it is compared to; ``direction`` says which side must hold.
    """

    claim: str
    parameters: dict
    measured: float
    bound: float
    seed: int
    trials: int
    violations: int = 0
    direction: str = ">="
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def csv_row(self) -> list[str]:
        params = ";".join(f"{k}={v}" for k, v in self.parameters.items())
        return [
            self.claim,
            params,
            f"{self.measured:.9g}",
            f"{self.bound:.9g}",
            "pass" if self.passed else "fail",
            str(self.seed),
            str(self.trials),
            str(self.violations),
        ]


REPORT_HEADER = ["claim", "parameters", "measured", "bound", "result", "seed", "trials", "violations"]


def low_error_words(n: int, Q: float) -> list[tuple[int, ...]]:
    """Words ``i`` over ``A_4^n`` with ``#_{1,3}(i) / n <= Q``."""
    return [w for w in all_words(n) if count_symbols(w, {1, 3}, d=4) <= Q * n + TOL]


def _random_support(rng: np.random.Generator, words: Sequence) -> list:
    size = int(rng.integers(1, len(words) + 1))
    pick = rng.choice(len(words), size=size, replace=False)
    return [words[i] for i in sorted(pick)]


def verify_lemma3(
    n: int, Q: float, trials: int, seed: int, bound_offset: float = 0.0
) -> VerificationReport:
    """Z-register min entropy of Bell superpositions with few 1/3 errors.

    With a trivial environment the A register's conditional min entropy is
    ``-log2 max_a p(a)``; it must be at least ``n (1 - ĥ(Q))``.
    ``bound_offset`` shifts the bound and exists only to exercise failure
    handling.
    """
    if not 1 <= n <= 3:
        raise ValueError("n must lie in 1..3")
    if not 0.0 <= Q <= 1.0:
        raise ValueError("Q must lie in [0, 1]")
    words = low_error_words(n, Q)
    bound = n * (1.0 - bounded_binary_entropy(Q)) + bound_offset
    pattern = "ZT" * n
    worst = math.inf
    violations = 0
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        support = _random_support(rng, words)
        state = bell_superposition(n, support, random_amplitudes(rng, len(support)))
        h = min_entropy_classical(measure_and_trace(state, pattern).probabilities)
        worst = min(worst, h)
        if h < bound - TOL:
            violations += 1
    return VerificationReport(
        "low_error_entropy_trivial_env", {"n": n, "Q": Q, "support": len(words)},
        worst, bound, seed, trials, violations,
    )


def verify_lemma3_helstrom(
    Q: float, trials: int, seed: int, environment: str = "orthogonal"
) -> VerificationReport:
    """Single-pair case with quantum environment, via optimal discrimination.

    ``environment="orthogonal"`` uses a depolarizing-source state;
    ``"random"`` draws arbitrary normalized environment vectors.
    """
    if environment not in ("orthogonal", "random"):
        raise ValueError(f"unknown environment kind {environment!r}")
    words = low_error_words(1, Q)
    bound = 1.0 - bounded_binary_entropy(Q)
    worst = math.inf
    violations = 0
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        support = _random_support(rng, words)
        amps = random_amplitudes(rng, len(support))
        if environment == "orthogonal":
            state = build_depolarizing_state(1, support, amps)
        else:
            envs = [random_amplitudes(rng, 4) for _ in support]
            state = with_environment(1, support, amps, envs)
        env_qubits = state.qubit_count - 2
        result = measure_and_trace(state, "ZT" + "K" * env_qubits)
        h = conditional_min_entropy_bit(result)
        worst = min(worst, h)
        if h < bound - TOL:
            violations += 1
    return VerificationReport(
        f"low_error_entropy_helstrom_{environment}", {"n": 1, "Q": Q},
        worst, bound, seed, trials, violations,
    )


def verify_superposition_lemma(
    n: int,
    J: Iterable | None,
    trials: int,
    seed: int,
    b: float = 0.0,
) -> VerificationReport:
    """X_alpha-measurement min entropy of a superposition versus its dephasing.

    For ``psi = sum_{i in J} a_i |i>`` it must hold that
    ``H_inf(X)_psi >= H_inf(X)_rho - log2 |J|`` with
    ``rho = sum |a_i|^2 |i><i|``. ``J=None`` draws a random ``J`` per trial.
    The reported value is the smallest margin (left side minus right side).
    """
    if not 1 <= n <= 3:
        raise ValueError("n must lie in 1..3")
    bits = all_words(n, 2)
    fixed = None if J is None else [tuple(int(c) for c in as_word_array(w, 2)) for w in J]
    if fixed is not None and (not fixed or any(len(w) != n for w in fixed)):
        raise ValueError("J must be a non-empty set of length-n bit strings")
    pattern = "X" * n
    worst = math.inf
    violations = 0
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        support = fixed if fixed is not None else _random_support(rng, bits)
        amps = random_amplitudes(rng, len(support))
        vec = np.zeros(2**n, dtype=complex)
        mixed = np.zeros(2**n)
        for a, w in zip(amps, support):
            index = int("".join(map(str, w)), 2)
            vec[index] += a
            basis_state = np.zeros(2**n, dtype=complex)
            basis_state[index] = 1.0
            mixed += abs(a) ** 2 * measure_and_trace(
                StateVector(basis_state), pattern, b
            ).distribution()
        lhs = min_entropy_classical(measure_and_trace(StateVector(vec), pattern, b).distribution())
        rhs = min_entropy_classical(mixed / mixed.sum()) - math.log2(len(support))
        worst = min(worst, lhs - rhs)
        if lhs < rhs - TOL:
            violations += 1
    return VerificationReport(
        "superposition_entropy", {"n": n, "b": b, "J": "random" if fixed is None else len(fixed)},
        worst, 0.0, seed, trials, violations,
    )


def _pair_coordinates(state: StateVector, pairs: int, bras: np.ndarray) -> np.ndarray:
    """Coefficients of ``state`` in a two-qubit basis on every pair, shape ``(4,)*pairs + (env,)``."""
    env = state.qubit_count - 2 * pairs
    if env < 0:
        raise ValueError("state has fewer qubits than the requested pairs")
    t = state.amplitudes.reshape((4,) * pairs + (2**env,))
    for k in range(pairs):
        t = np.moveaxis(np.tensordot(bras, t, axes=([1], [k])), 0, k)
    return t


def _from_pair_coordinates(coords: np.ndarray, pairs: int, bras: np.ndarray) -> np.ndarray:
    kets = bras.conj().T
    t = coords
    for k in range(pairs):
        t = np.moveaxis(np.tensordot(kets, t, axes=([1], [k])), 0, k)
    return t.ravel()


def _env_gram_offdiag(coords: np.ndarray) -> float:
    rows = coords.reshape(-1, coords.shape[-1])
    gram = rows.conj() @ rows.T
    return float(np.abs(gram - np.diag(np.diag(gram))).max())


@dataclass
class IdealProjection:
    """Per-subset result; ``residual`` is the larger of the out-of-span norm and the overlap mismatch."""

    subset: tuple[int, ...]
    distance: float
    residual: float
    offdiag: float


def verify_ideal_projection(
    state: StateVector, pairs: int, m: int, delta: float
) -> VerificationReport:
    """Project a state onto the ideal subspace of every size-``m`` subset.

    Checks, for each subset ``t`` (uniformly weighted):

    * the projected state has no weight outside ``span(G_t)`` and its
      overlap with the input equals the projected weight;
    * the average trace distance to the input is at most ``sqrt(eps_cl)``,
      both for the exact error probability and the analytic bound;
    * an input with orthogonal environment components keeps that property.
    """
    if not 1 <= pairs <= 4:
        raise ValueError("pairs must lie in 1..4")
    if not 0 < m < pairs - m:
        raise ValueError("need 0 < m < N/2")
    bell = build_basis("Bell").bras()
    coords = _pair_coordinates(state, pairs, bell)
    words = all_words(pairs)
    input_depolarizing = _env_gram_offdiag(coords) <= TOL

    projections = []
    subsets = list(itertools.combinations(range(1, pairs + 1), m))
    for t in subsets:
        mask = np.zeros((4,) * pairs, dtype=bool)
        for w in words:
            mask[w] = ideal_word_quaternary(w, t, delta)
        projected = coords * mask[..., None]
        weight = float(np.vdot(projected, projected).real)
        if weight <= TOL:
            projections.append(IdealProjection(t, 1.0, 0.0, 0.0))
            continue
        phi = _from_pair_coordinates(projected / math.sqrt(weight), pairs, bell)
        phi_state = StateVector(phi)
        # re-decompose the projected state to confirm it lies in span(G_t)
        back = _pair_coordinates(phi_state, pairs, bell)
        residual = float(np.linalg.norm(back[~mask]))
        # 1 - |<psi|phi>|^2 equals the weight outside span(G_t); the
        # overlap route is kept as a cross-check
        outside = coords * ~mask[..., None]
        distance = math.sqrt(float(np.vdot(outside, outside).real))
        overlap = abs(state.overlap(phi_state)) ** 2
        mismatch = abs(overlap - weight)
        projections.append(
            IdealProjection(t, distance, max(residual, mismatch), _env_gram_offdiag(back))
        )

    average = float(np.mean([p.distance for p in projections]))
    eps_exact = exact_error_probability(pairs, m, delta)
    eps_bound = classical_error_bound(pairs, m, delta)
    violations = 0
    if average > math.sqrt(eps_exact) + TOL:
        violations += 1
    if average > math.sqrt(eps_bound) + TOL:
        violations += 1
    violations += sum(p.residual > TOL for p in projections)
    if input_depolarizing:
        violations += sum(p.offdiag > TOL for p in projections)
    return VerificationReport(
        "ideal_projection",
        {"N": pairs, "m": m, "delta": delta, "depolarizing": input_depolarizing},
        average, math.sqrt(eps_exact), 0, len(subsets), violations, "<=",
        details=projections,
    )


def _distance_matrix(words: Sequence[tuple[int, ...]]) -> np.ndarray:
    arr = np.asarray(words)
    return (arr[:, None, :] != arr[None, :, :]).sum(axis=2)


def ideal_ideal_gap(state: StateVector, m: int, b: float, nu: float) -> tuple[float, float]:
    """Return ``(1 - M, 1 - |<phi|phi~>|^2)`` for a state on ``m`` pairs.

    ``M`` is the weight left after removing X_alpha-Bell components ``j``
    whose Bell-basis origin ``i`` is more than ``m nu`` symbols away. The
    environment register must carry one computational-basis state per Bell
    word: slot ``k`` belongs to the ``k``-th word of ``A_4^m`` in
    lexicographic order.
    """
    words = all_words(m)
    xbell = build_basis("X_alpha_Bell", as_bias(b)).bras()
    coords = _pair_coordinates(state, m, xbell).reshape(len(words), -1)
    if coords.shape[1] < len(words):
        raise ValueError("environment register too small for one slot per Bell word")
    keep = _distance_matrix(words) <= m * nu + TOL
    good = np.zeros_like(coords)
    good[:, : len(words)] = np.where(keep, coords[:, : len(words)], 0.0)
    big_m = float(np.vdot(good, good).real)
    if big_m <= TOL:
        return 1.0 - big_m, 1.0
    tilde = _from_pair_coordinates(
        (good / math.sqrt(big_m)).reshape((4,) * m + (-1,)), m, xbell
    )
    overlap = abs(np.vdot(state.amplitudes, tilde)) ** 2
    return 1.0 - big_m, 1.0 - overlap


def verify_hoeffding_step(
    m: int, b: float, nu: float, trials: int, seed: int
) -> VerificationReport:
    """Ideal-ideal weight loss against the binomial tail and Hoeffding bound.

    Uses depolarizing-source states over all of ``A_4^m``. Checks that
    ``1 - M <= Pr[Bin(m, 4 b^2) > m nu]``, that this tail is at most both the
    floor-indexed tail ``Pr[Bin >= floor(m nu)]`` and, when ``nu >= 4 b^2``,
    ``exp(-2 m (nu - 4b^2)^2)``, and that the fidelity loss
    ``1 - |<phi|phi~>|^2`` equals ``1 - M``.
    """
    if not 1 <= m <= 3:
        raise ValueError("m must lie in 1..3")
    bias = as_bias(b)
    p = bias.p
    cutoff = math.floor(m * nu + TOL)
    tail = binomial_tail(m, p, cutoff + 1) if cutoff < m else 0.0
    floor_tail = binomial_tail(m, p, min(m, cutoff))
    hoeffding = hoeffding_tail_bound(m, p, nu) if nu >= p else math.inf
    words = all_words(m)
    worst = 0.0
    violations = int(tail > floor_tail + TOL) + int(tail > hoeffding + TOL)
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        state = build_depolarizing_state(m, words, random_amplitudes(rng, len(words)))
        loss, fidelity_loss = ideal_ideal_gap(state, m, bias.b, nu)
        worst = max(worst, loss)
        if loss > tail + TOL or abs(loss - fidelity_loss) > TOL:
            violations += 1
    return VerificationReport(
        "ideal_ideal_gap",
        {"m": m, "b": bias.b, "nu": nu, "floor_tail": f"{floor_tail:.9g}",
         "hoeffding": f"{hoeffding:.9g}"},
        worst, tail, seed, trials, violations, "<=",
    )


def verify_overlaps(bs: Sequence[float]) -> VerificationReport:
    """Overlap pattern ``p = 4b^2``, ``q = 1 - 4b^2`` and basis orthonormality."""
    worst = 0.0
    for b in bs:
        p = 4.0 * b * b
        expected = np.diag([1.0, 1.0 - p, 1.0 - p, 1.0])
        expected[1, 2] = expected[2, 1] = p
        worst = max(worst, float(np.abs(overlap_matrix(b) - expected).max()))
        for kind in ("Z", "X_alpha", "Bell", "X_alpha_Bell"):
            build_basis(kind, b)  # raises if not orthonormal
    violations = int(worst > 1e-12)
    return VerificationReport(
        "overlap_identities", {"points": len(bs)}, worst, 1e-12, 0, len(bs), violations, "<=",
    )


__all__ = [
    "REPORT_HEADER",
    "VerificationReport",
    "ideal_ideal_gap",
    "low_error_words",
    "verify_hoeffding_step",
    "verify_ideal_projection",
    "verify_lemma3",
    "verify_lemma3_helstrom",
    "verify_overlaps",
    "verify_superposition_lemma",
]
