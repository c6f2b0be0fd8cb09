"""Min-entropy bounds for a Z-basis measurement given a biased X-basis test.

The X basis is ``X_alpha = {a|0> + c|1>, c|0> - a|1>}`` with
``a = sqrt(1/2 + b)`` and ``c = sqrt(1/2 - b)``. At ``b = 0`` it is the
Hadamard basis; at ``b = +-1/2`` it collapses onto Z.

Finite-size bound: sample ``m`` of ``N = n + m`` Bell pairs in ``X_alpha``,
observe an error rate ``w_q``. Except with probability ``(16 eps)^(1/3)``,
the smooth min entropy (smoothing ``8 eps + 3 (2 eps)^(1/3)``) of the
remaining ``n`` Z-outcomes is at least ``n (1 - ĥ(w_q + nu + delta))``.

Note on ``nu``: its finite-size term is ``ln(1/(2 eps)) / sqrt(m)`` as used
throughout this package. Requiring ``exp(-2 m (nu - p)^2) <= eps^2`` directly
would instead give ``sqrt(ln(1/eps) / m)``. For every ``eps`` of practical
interest the former is the larger, i.e. more conservative, correction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .math_core import binary_entropy, bounded_binary_entropy


@dataclass(frozen=True)
class BiasParameter:
    b: float

    def __post_init__(self):
        if not -0.5 <= self.b <= 0.5:
            raise ValueError(f"bias must lie in [-0.5, 0.5], got {self.b}")

    @property
    def alpha(self) -> float:
        return math.sqrt(0.5 + self.b)

    @property
    def beta(self) -> float:
        return math.sqrt(0.5 - self.b)

    @property
    def p(self) -> float:
        """Squared overlap between Bell states mixed by the bias, ``4 b^2``."""
        return 4.0 * self.b * self.b

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def magnitude(self) -> float:
        return abs(self.b)


def as_bias(b: "BiasParameter | float") -> BiasParameter:
    return b if isinstance(b, BiasParameter) else BiasParameter(float(b))


@dataclass(frozen=True)
class FiniteSizeParams:
    N: int
    m: int

    def __post_init__(self):
        if not 0 < self.m or not 2 * self.m < self.N:
            raise ValueError(f"need 0 < m < N/2, got N={self.N}, m={self.m}")

    @property
    def n(self) -> int:
        return self.N - self.m

    @classmethod
    def from_fraction(cls, N: int | float, fraction: float = 0.07) -> "FiniteSizeParams":
        N = int(round(N))
        return cls(N, int(round(fraction * N)))


@dataclass(frozen=True)
class UncertaintyBound:
    min_entropy_lower_bound: float
    smoothing: float
    failure_probability: float
    argument: float
    n: int

    @property
    def per_signal(self) -> float:
        return self.min_entropy_lower_bound / self.n


def _check_eps(epsilon: float, upper: float) -> float:
    epsilon = float(epsilon)
    if not 0.0 < epsilon < upper:
        raise ValueError(f"epsilon must lie in (0, {upper}), got {epsilon}")
    return epsilon


def delta_param(m: int, n: int, epsilon: float) -> float:
    """Sampling tolerance ``sqrt((m+n+2)/(m(m+n)) ln(2/eps^2))``."""
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got m={m}, n={n}")
    epsilon = _check_eps(epsilon, 1.0)
    log_term = math.log(2.0) - 2.0 * math.log(epsilon)
    return math.sqrt((m + n + 2) / (m * (m + n)) * log_term)


def nu_param(b: BiasParameter | float, m: int, epsilon: float) -> float:
    """Bias allowance ``4 b^2 + ln(1/(2 eps)) / sqrt(m)``."""
    b = as_bias(b)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    epsilon = _check_eps(epsilon, 0.5)
    return b.p + (-math.log(2.0 * epsilon)) / math.sqrt(m)


def smoothing_parameter(epsilon: float) -> float:
    return 8.0 * epsilon + 3.0 * (2.0 * epsilon) ** (1.0 / 3.0)


def failure_probability(epsilon: float) -> float:
    return (16.0 * epsilon) ** (1.0 / 3.0)


def epsilon_for_failure(target: float) -> float:
    """Inverse of :func:`failure_probability`: ``eps = target^3 / 16``."""
    if not 0.0 < target < 1.0:
        raise ValueError(f"target failure probability must lie in (0, 1), got {target}")
    return target**3 / 16.0


def theorem_bound(
    params: FiniteSizeParams,
    b: BiasParameter | float,
    epsilon: float,
    w_q: float,
) -> UncertaintyBound:
    """Finite-size min-entropy lower bound over the ``n`` unsampled signals.

    Returns a bound of exactly 0 when ``w_q + nu + delta >= 1/2``.
    """
    b = as_bias(b)
    epsilon = _check_eps(epsilon, 0.5)
    if not 0.0 <= w_q <= 1.0:
        raise ValueError(f"w_q must lie in [0, 1], got {w_q}")
    n = params.n
    argument = w_q + nu_param(b, params.m, epsilon) + delta_param(params.m, n, epsilon)
    value = n * (1.0 - bounded_binary_entropy(argument))
    return UncertaintyBound(
        min_entropy_lower_bound=min(float(n), max(0.0, value)),
        smoothing=smoothing_parameter(epsilon),
        failure_probability=failure_probability(epsilon),
        argument=argument,
        n=n,
    )


def asymptotic_bound_ours(b: BiasParameter | float, q: float) -> float:
    """Per-signal entropy ``1 - h(min(1/2, q + 4 b^2))``."""
    b = as_bias(b)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    return 1.0 - binary_entropy(min(0.5, q + b.p))


def asymptotic_bound_standard(b: BiasParameter | float, q: float) -> float:
    """Overlap-based bound ``max(0, -log2(1/2 + b) - h(q))`` for ``b >= 0``.

    Negative biases are rejected rather than mirrored; pass ``abs(b)``.
    """
    b = as_bias(b)
    if b.b < 0:
        raise ValueError("the overlap-based bound is stated for b >= 0; pass |b|")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    return max(0.0, -math.log2(0.5 + b.b) - binary_entropy(q))


def best_asymptotic_bound(b: BiasParameter | float, q: float) -> float:
    """Pointwise maximum of both asymptotic bounds; ``b`` is mirrored to ``|b|``."""
    b = as_bias(b)
    mirrored = BiasParameter(b.magnitude)
    return max(asymptotic_bound_ours(mirrored, q), asymptotic_bound_standard(mirrored, q))
