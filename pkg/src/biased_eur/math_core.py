"""Entropy primitives, word utilities and tail bounds.

Words are sequences over the alphabet ``{0, ..., d-1}`` with ``d`` equal to
2 or 4. Anywhere a word is expected, a string of digits (``"0132"``), a
sequence of ints, a numpy integer array or a :class:`Word` is accepted.
Subset indices are 1-based, following the usual convention for index sets
``t ⊂ {1, ..., N}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

#: Largest number of trials for which :func:`binomial_tail` sums exactly.
EXACT_TAIL_LIMIT = 100_000
#: Largest ``n`` for which exact big-integer ball sizes are offered.
EXACT_BALL_LIMIT = 64

ALPHABETS = (2, 4)


@dataclass(frozen=True)
class Word:
    """A finite word over ``A_d``."""

    symbols: tuple[int, ...]
    d: int = 2

    def __post_init__(self):
        if self.d not in ALPHABETS:
            raise ValueError(f"alphabet size must be 2 or 4, got {self.d}")
        if len(self.symbols) == 0:
            raise ValueError("word must be non-empty")
        if any(s < 0 or s >= self.d for s in self.symbols):
            raise ValueError(f"word {self.symbols} has symbols outside A_{self.d}")

    @classmethod
    def parse(cls, text: str, d: int = 2) -> "Word":
        return cls(tuple(int(c) for c in text), d)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.symbols, dtype=np.int64)


WordLike = Union[Word, str, Sequence[int], np.ndarray]


def as_word_array(word: WordLike, d: int | None = None) -> np.ndarray:
    """Coerce ``word`` to a 1-D int array, validating against ``A_d``.

    When ``d`` is None the alphabet is taken from a :class:`Word` argument
    or otherwise inferred as the smallest of ``{2, 4}`` containing every
    symbol.
    """
    if isinstance(word, Word):
        if d is not None and word.d > d:
            raise ValueError(f"expected a word over A_{d}, got one over A_{word.d}")
        arr = word.to_array()
    elif isinstance(word, str):
        if not word.isdigit():
            raise ValueError(f"word string must contain only digits, got {word!r}")
        arr = np.fromiter((int(c) for c in word), dtype=np.int64, count=len(word))
    else:
        arr = np.asarray(word, dtype=np.int64).ravel()
    if arr.size == 0:
        raise ValueError("word must be non-empty")
    limit = d if d is not None else (2 if arr.max() < 2 else 4)
    if arr.min() < 0 or arr.max() >= limit:
        raise ValueError(f"word has symbols outside A_{limit}")
    return arr


@dataclass(frozen=True)
class SubsetIndex:
    """Strictly increasing 1-based indices into a parent word."""

    indices: tuple[int, ...]
    parent_length: int

    def __post_init__(self):
        idx = self.indices
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("subset indices must be strictly increasing")
        if idx and (idx[0] < 1 or idx[-1] > self.parent_length):
            raise ValueError(
                f"subset indices must lie in 1..{self.parent_length}, got {idx}"
            )

    @classmethod
    def of(cls, indices: Iterable[int], parent_length: int) -> "SubsetIndex":
        items = list(indices)
        if len(set(items)) != len(items):
            raise ValueError("subset indices contain duplicates")
        return cls(tuple(sorted(items)), parent_length)

    def __len__(self) -> int:
        return len(self.indices)

    def mask(self) -> np.ndarray:
        """Boolean mask of length ``parent_length`` selecting the subset."""
        m = np.zeros(self.parent_length, dtype=bool)
        m[np.asarray(self.indices, dtype=np.int64) - 1] = True
        return m


def _check_probability(p: float, name: str = "p") -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


def binary_entropy(p: float) -> float:
    """Binary Shannon entropy ``h(p)`` in bits, with ``0 log 0 = 0``."""
    p = _check_probability(p)
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def bounded_binary_entropy(x: float) -> float:
    """``h(x)`` below 1/2 and 1 from there on.

    Arguments above 1 are accepted and return 1; finite-size corrections
    routinely push the argument past 1 for small samples.
    """
    x = float(x)
    if x < 0 or math.isnan(x):
        raise ValueError(f"bounded binary entropy needs x >= 0, got {x}")
    if x < 0.5:
        return binary_entropy(x)
    return 1.0


def relative_hamming_weight(x: WordLike) -> float:
    arr = as_word_array(x, 2)
    return float(np.count_nonzero(arr)) / arr.size


def hamming_distance(a: WordLike, b: WordLike) -> int:
    """Number of positions where ``a`` and ``b`` differ."""
    a_arr = as_word_array(a)
    b_arr = as_word_array(b)
    if a_arr.size != b_arr.size:
        raise ValueError(f"length mismatch: {a_arr.size} vs {b_arr.size}")
    return int(np.count_nonzero(a_arr != b_arr))


def count_symbols(a: WordLike, symbols: Iterable[int], d: int | None = None) -> int:
    """Number of positions of ``a`` holding one of ``symbols``.

    ``count_symbols(a, {1, 3})`` is the ``#_{1,3}`` count used throughout.
    """
    arr = as_word_array(a, d)
    # without an explicit alphabet, symbols are checked against A_4 so that
    # asking for #_{1,3} of an all-zero word is legal
    limit = d if d is not None else 4
    wanted = set(int(s) for s in symbols)
    bad = sorted(s for s in wanted if s < 0 or s >= limit)
    if bad:
        raise ValueError(f"symbols {bad} lie outside A_{limit}")
    return int(np.isin(arr, list(wanted)).sum())


def hamming_ball_size(n: int, radius: int) -> int:
    """Exact number of binary words within Hamming distance ``radius``."""
    if n < 0 or radius < 0:
        raise ValueError("n and radius must be non-negative")
    if radius > n:
        raise ValueError(f"radius {radius} exceeds n = {n}")
    if n > EXACT_BALL_LIMIT:
        raise ValueError(
            f"exact ball sizes are limited to n <= {EXACT_BALL_LIMIT}; "
            "use hamming_ball_log_bound"
        )
    return sum(math.comb(n, k) for k in range(radius + 1))


def hamming_ball_log_bound(n: int, Q: float) -> float:
    """Upper bound ``n * ĥ(Q)`` on ``log2`` of the ball of relative radius Q."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return n * bounded_binary_entropy(Q)


def _log_comb(m: int, k: int) -> float:
    return math.lgamma(m + 1) - math.lgamma(k + 1) - math.lgamma(m - k + 1)


def binomial_tail(m: int, p: float, k_min: int) -> float:
    """``Pr[X >= k_min]`` for ``X ~ Binomial(m, p)``, summed in log space."""
    p = _check_probability(p)
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if m > EXACT_TAIL_LIMIT:
        raise ValueError(
            f"exact tails are limited to m <= {EXACT_TAIL_LIMIT}; "
            "use hoeffding_tail_bound"
        )
    if not 0 <= k_min <= m:
        raise ValueError(f"k_min must lie in [0, {m}], got {k_min}")
    if k_min == 0:
        return 1.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    lp, lq = math.log(p), math.log1p(-p)
    terms = np.array(
        [_log_comb(m, k) + k * lp + (m - k) * lq for k in range(k_min, m + 1)]
    )
    top = terms.max()
    return float(min(1.0, math.exp(top) * np.exp(terms - top).sum()))


def hoeffding_tail_bound(m: int, p: float, nu: float) -> float:
    """Hoeffding bound ``exp(-2 m (nu - p)^2)`` on ``Pr[X >= m nu]``."""
    p = _check_probability(p)
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if nu < p:
        raise ValueError(f"Hoeffding's upper tail needs nu >= p ({nu} < {p})")
    return math.exp(-2.0 * m * (nu - p) ** 2)
