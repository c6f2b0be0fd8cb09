"""Classical sampling strategies and their error probabilities.

Two strategies are provided. The binary one samples a uniform subset ``t``
of size ``m`` from a bit string and uses the relative weight of ``q_t`` to
guess the relative weight of the unobserved rest. The quaternary one does
the same over ``A_4`` with the relative number of 1's and 3's; it reduces
to the binary strategy through :func:`reduce_quaternary_to_binary`.

Both share the tail bound ``2 exp(-delta^2 m N / (N + 2))``. The exact
error probability is also available (:func:`exact_error_probability`).
It depends only on the weight of the word, which turns the maximum over
all words into a maximum over ``N + 1`` hypergeometric tails.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .math_core import (
    SubsetIndex,
    WordLike,
    as_word_array,
)

# relative slack on the delta comparison; keeps |x - y| <= delta stable when
# the difference lands exactly on delta in floating point
_DELTA_SLACK = 1e-12
_CHUNK = 1024

SubsetLike = Union[SubsetIndex, Iterable[int]]


def _check_sizes(N: int, m: int) -> None:
    if N < 2:
        raise ValueError(f"population size must be at least 2, got {N}")
    if not 0 < m or not 2 * m < N:
        # with n = N - m, m < N/2 is the same condition as m < n
        raise ValueError(f"sample size must satisfy 0 < m < N/2, got m={m}, N={N}")


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return delta


@dataclass(frozen=True)
class SamplingStrategy:
    """Uniform size-``m`` subset sampling over ``A_d^N``."""

    population_size: int
    sample_size: int
    alphabet_size: int = 2
    delta: float = 0.1

    def __post_init__(self):
        _check_sizes(self.population_size, self.sample_size)
        _check_delta(self.delta)
        if self.alphabet_size not in (2, 4):
            raise ValueError(f"alphabet size must be 2 or 4, got {self.alphabet_size}")

    @property
    def unobserved(self) -> int:
        return self.population_size - self.sample_size

    def error_bound(self) -> float:
        return classical_error_bound(self.population_size, self.sample_size, self.delta)

    def exact_error(self) -> float:
        return exact_error_probability(self.population_size, self.sample_size, self.delta)

    def is_ideal(self, q: WordLike, t: SubsetLike) -> bool:
        if self.alphabet_size == 2:
            return ideal_word_binary(q, t, self.delta)
        return ideal_word_quaternary(q, t, self.delta)


@dataclass(frozen=True)
class ErrorProbabilityReport:
    analytic_bound: float
    empirical_estimate: Optional[float]
    trials: int
    seed: int
    failures: int = 0

    def __post_init__(self):
        if not 0.0 <= self.analytic_bound <= 1.0:
            raise ValueError("analytic bound must lie in [0, 1]")
        if (self.empirical_estimate is None) != (self.trials == 0):
            raise ValueError("an empirical estimate is present exactly when trials > 0")

    @property
    def standard_error(self) -> float:
        """Binomial standard error of a proportion equal to the analytic bound."""
        if self.trials == 0:
            return 0.0
        b = self.analytic_bound
        return math.sqrt(b * (1.0 - b) / self.trials)

    def within_bound(self, sigmas: float = 3.0) -> bool:
        if self.empirical_estimate is None:
            return True
        return self.empirical_estimate <= self.analytic_bound + sigmas * self.standard_error


def _as_mask(t: SubsetLike, length: int) -> np.ndarray:
    if not isinstance(t, SubsetIndex):
        t = SubsetIndex.of(t, length)
    elif t.parent_length != length:
        raise ValueError(f"subset refers to a word of length {t.parent_length}, not {length}")
    if not 0 < len(t) < length:
        raise ValueError(f"subset size must lie strictly between 0 and {length}")
    return t.mask()


def _weights_close(ones_t: int, m: int, ones_rest: int, n: int, delta: float) -> bool:
    # |ones_t/m - ones_rest/n| <= delta, cleared of denominators
    return abs(ones_t * n - ones_rest * m) <= delta * m * n * (1.0 + _DELTA_SLACK)


def ideal_word_binary(q: WordLike, t: SubsetLike, delta: float) -> bool:
    """True iff ``|w(q_t) - w(q_{-t})| <= delta``."""
    delta = _check_delta(delta)
    arr = as_word_array(q, 2)
    mask = _as_mask(t, arr.size)
    m = int(mask.sum())
    ones_t = int(arr[mask].sum())
    ones_rest = int(arr[~mask].sum())
    return _weights_close(ones_t, m, ones_rest, arr.size - m, delta)


def ideal_word_quaternary(q: WordLike, t: SubsetLike, delta: float) -> bool:
    """True iff the relative ``#_{1,3}`` counts of ``q_t`` and ``q_{-t}`` are delta-close."""
    delta = _check_delta(delta)
    arr = as_word_array(q, 4)
    mask = _as_mask(t, arr.size)
    odd = (arr == 1) | (arr == 3)
    m = int(mask.sum())
    return _weights_close(
        int(odd[mask].sum()), m, int(odd[~mask].sum()), arr.size - m, delta
    )


def reduce_quaternary_to_binary(q: WordLike) -> np.ndarray:
    """Map 0, 2 to 0 and 1, 3 to 1 positionwise."""
    arr = as_word_array(q, 4)
    return (arr % 2).astype(np.int64)


def classical_error_bound(N: int, m: int, delta: float) -> float:
    """Tail bound on the error probability of the binary strategy, clamped to 1."""
    _check_sizes(N, m)
    delta = _check_delta(delta)
    return min(1.0, 2.0 * math.exp(-(delta**2) * m * N / (N + 2)))


def quaternary_error_bound(n: int, m: int, delta: float) -> float:
    """Error bound for the quaternary strategy on ``n + m`` symbols.

    Requires ``m < n``.
    """
    return classical_error_bound(n + m, m, delta)


def _log_hypergeom(N: int, K: int, m: int, j: int) -> float:
    return (
        math.lgamma(K + 1) - math.lgamma(j + 1) - math.lgamma(K - j + 1)
        + math.lgamma(N - K + 1) - math.lgamma(m - j + 1) - math.lgamma(N - K - m + j + 1)
        - (math.lgamma(N + 1) - math.lgamma(m + 1) - math.lgamma(N - m + 1))
    )


def failure_probability_for_weight(N: int, m: int, delta: float, weight: int) -> float:
    """Exact ``Pr_t[q not ideal]`` for any binary word with ``weight`` ones."""
    _check_sizes(N, m)
    delta = _check_delta(delta)
    if not 0 <= weight <= N:
        raise ValueError(f"weight must lie in [0, {N}], got {weight}")
    n = N - m
    total = 0.0
    for j in range(max(0, weight - n), min(m, weight) + 1):
        if not _weights_close(j, m, weight - j, n, delta):
            total += math.exp(_log_hypergeom(N, weight, m, j))
    return min(1.0, total)


def exact_error_probability(N: int, m: int, delta: float) -> float:
    """Exact error probability: the worst word's chance of a non-ideal subset."""
    return max(failure_probability_for_weight(N, m, delta, k) for k in range(N + 1))


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return seed


def _chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng([seed, chunk])


def _partial_shuffle(rng: np.random.Generator, rows: int, N: int, m: int) -> np.ndarray:
    perm = np.tile(np.arange(N, dtype=np.int64), (rows, 1))
    r = np.arange(rows)
    for i in range(m):
        j = rng.integers(i, N, size=rows)
        tmp = perm[r, i].copy()
        perm[r, i] = perm[r, j]
        perm[r, j] = tmp
    return perm[:, :m]


def sample_subsets(N: int, m: int, trials: int, seed: int) -> np.ndarray:
    """Draw ``trials`` uniform size-``m`` subsets of ``{0, ..., N-1}``.

    Returns a ``(trials, m)`` array of 0-based indices. Trials are generated
    in fixed-size blocks, each with its own generator seeded by
    ``(seed, block index)``, so the output does not depend on how the
    blocks are scheduled.
    """
    seed = _check_seed(seed)
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 < m <= N:
        raise ValueError(f"need 0 < m <= N, got m={m}, N={N}")
    return np.concatenate(list(_iter_subset_blocks(N, m, trials, seed)), axis=0)


def _iter_subset_blocks(N: int, m: int, trials: int, seed: int):
    for chunk, start in enumerate(range(0, trials, _CHUNK)):
        rows = min(_CHUNK, trials - start)
        yield _partial_shuffle(_chunk_generator(seed, chunk), rows, N, m)


def monte_carlo_failure_estimate(
    q: WordLike, m: int, delta: float, trials: int, seed: int
) -> ErrorProbabilityReport:
    """Estimate ``Pr_t[q not ideal]`` by drawing ``trials`` random subsets.

    Binary words use the binary strategy, words containing 2 or 3 the
    quaternary one.
    """
    arr = as_word_array(q)
    N = arr.size
    _check_sizes(N, m)
    delta = _check_delta(delta)
    seed = _check_seed(seed)
    if trials < 1:
        raise ValueError("trials must be positive")
    marks = ((arr == 1) | (arr == 3)).astype(np.int64)
    K = int(marks.sum())
    n = N - m
    failures = 0
    for block in _iter_subset_blocks(N, m, trials, seed):
        ones = marks[block].sum(axis=1)
        diff = np.abs(ones * n - (K - ones) * m)
        failures += int(np.count_nonzero(diff > delta * m * n * (1.0 + _DELTA_SLACK)))
    return ErrorProbabilityReport(
        analytic_bound=classical_error_bound(N, m, delta),
        empirical_estimate=failures / trials,
        trials=trials,
        seed=seed,
        failures=failures,
    )


def balanced_word(N: int) -> np.ndarray:
    """Binary word with ``floor(N/2)`` ones; the default worst case for testing."""
    word = np.zeros(N, dtype=np.int64)
    word[: N // 2] = 1
    return word
