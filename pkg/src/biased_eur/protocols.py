"""Finite-size bit-generation rates for SI-QRNG and biased-basis BB84.

Every rate is per signal (divided by ``N``) and is returned as a
:class:`RateTerms` breakdown. Its raw value may be negative and its clamped
value is ``max(0, raw)``.

Conventions:

* ``m`` test signals out of ``N``; ``n = N - m`` raw-key signals.
* Negative biases are mirrored to ``|b|``; all formulas are even in ``b``.
* Error-correction leakage is ``ec_factor * n * h(.)`` bits in total, i.e.
  the per-signal factor ``ec_factor * h(.)`` scaled by the ``n`` signals it
  is spent on.
* Entropy and leakage arguments go through the bounded binary entropy,
  so an argument past 1/2 saturates instead of folding back.
* The final correctness-check leakage ``log2(1/eps_cor)`` is omitted from
  both QKD rates. It is identical for the two and cancels in comparisons.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Literal, Optional, Sequence

from .math_core import bounded_binary_entropy
from .uncertainty import (
    BiasParameter,
    FiniteSizeParams,
    as_bias,
    delta_param,
    nu_param,
)

Protocol = Literal["qrng", "qkd"]
Axis = Literal["N", "b", "w_q"]

DEFAULT_SAMPLING_FRACTION = 0.07


@dataclass(frozen=True)
class SecurityBudget:
    """Security parameters used by the two families of rate formulas."""

    epsilon: float = 1e-36
    epsilon_prime: float = 1e-12
    epsilon_hat: float = 1e-12
    ec_factor: float = 1.2

    def __post_init__(self):
        for name in ("epsilon", "epsilon_prime", "epsilon_hat"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")
        if self.ec_factor < 1.0:
            raise ValueError(f"ec_factor must be >= 1, got {self.ec_factor}")


@dataclass(frozen=True)
class RateTerms:
    """A rate split into per-signal contributions; raw = entropy - leakage + correction."""

    entropy: float
    leakage: float = 0.0
    correction: float = 0.0

    @property
    def raw(self) -> float:
        return self.entropy - self.leakage + self.correction

    @property
    def clamped(self) -> float:
        return max(0.0, self.raw)


def _params(N: int, m: int) -> FiniteSizeParams:
    return FiniteSizeParams(int(N), int(m))


def _check_wq(w_q: float) -> float:
    w_q = float(w_q)
    if not 0.0 <= w_q <= 1.0:
        raise ValueError(f"w_q must lie in [0, 1], got {w_q}")
    return w_q


def _overlap_constant(b: BiasParameter) -> float:
    return -math.log2(0.5 + b.magnitude)


def gamma_fn(x: float) -> float:
    """Correction function of the overlap-based QRNG rate, continuous at 0.

    Evaluated as ``(x + s) * ((s + 1) / x)^x`` with ``s = sqrt(1 + x^2)``,
    which equals the textbook ``x / (s - 1)`` form without its cancellation.
    """
    x = float(x)
    if x < 0 or math.isnan(x):
        raise ValueError(f"gamma is defined for x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    s = math.sqrt(1.0 + x * x)
    return (x + s) * math.exp(x * (math.log1p(s) - math.log(x)))


def delta_prime(N: int, n: int, m: int, epsilon_prime: float) -> float:
    """Sampling correction ``2 sqrt(N^2 / (n^2 m) ln(4/eps'))``."""
    if N < 1 or n < 1 or m < 1:
        raise ValueError("signal counts must be positive")
    if not 0.0 < epsilon_prime < 4.0:
        raise ValueError(f"epsilon_prime must lie in (0, 4), got {epsilon_prime}")
    return 2.0 * math.sqrt(N * N / (n * n * m) * math.log(4.0 / epsilon_prime))


def mu_param(N: int, m: int, n: int, epsilon_hat: float) -> float:
    """Parameter-estimation correction ``sqrt(N (m+1) / (n m^2) ln(2/eps_hat))``."""
    if N < 1 or n < 1 or m < 1:
        raise ValueError("signal counts must be positive")
    if not 0.0 < epsilon_hat < 2.0:
        raise ValueError(f"epsilon_hat must lie in (0, 2), got {epsilon_hat}")
    return math.sqrt(N * (m + 1) / (n * m * m) * math.log(2.0 / epsilon_hat))


def qrng_rate_ours(
    N: int,
    m: int,
    b: BiasParameter | float,
    epsilon: float,
    w_q: float,
    pa_sign: Literal["additive", "subtractive"] = "additive",
) -> RateTerms:
    """Sampling-based QRNG rate ``(n (1 - ĥ(w_q + nu + delta)) + 2 log2(1/eps)) / N``.

    ``pa_sign="additive"`` adds the ``2 log2(1/eps)`` term; ``"subtractive"``
    subtracts it instead, which is what the leftover-hash relation between
    smooth min entropy and extractable length gives.
    """
    params = _params(N, m)
    b = as_bias(b)
    w_q = _check_wq(w_q)
    if pa_sign not in ("additive", "subtractive"):
        raise ValueError(f"pa_sign must be 'additive' or 'subtractive', got {pa_sign!r}")
    argument = w_q + nu_param(b, params.m, epsilon) + delta_param(params.m, params.n, epsilon)
    entropy = params.n * (1.0 - bounded_binary_entropy(argument)) / params.N
    pa = 2.0 * math.log2(1.0 / epsilon) / params.N
    return RateTerms(entropy=entropy, correction=pa if pa_sign == "additive" else -pa)


def qrng_rate_other(
    N: int, m: int, b: BiasParameter | float, epsilon_prime: float, w_q: float
) -> RateTerms:
    """Overlap-based QRNG rate ``(-n log2(1/2 + b) - n log2 gamma(w_q + delta')) / N``."""
    params = _params(N, m)
    b = as_bias(b)
    w_q = _check_wq(w_q)
    dprime = delta_prime(params.N, params.n, params.m, epsilon_prime)
    frac = params.n / params.N
    return RateTerms(
        entropy=frac * _overlap_constant(b),
        correction=-frac * math.log2(gamma_fn(w_q + dprime)),
    )


def qkd_rate_old(
    N: int,
    m: int,
    b: BiasParameter | float,
    epsilon_hat: float,
    w_q: float,
    ec_factor: float = 1.2,
) -> RateTerms:
    """Overlap-based BB84 key rate with leakage ``ec_factor * n * h(w_q + mu)``."""
    params = _params(N, m)
    b = as_bias(b)
    w_q = _check_wq(w_q)
    mu = mu_param(params.N, params.m, params.n, epsilon_hat)
    h_err = bounded_binary_entropy(w_q + mu)
    frac = params.n / params.N
    return RateTerms(
        entropy=frac * (_overlap_constant(b) - h_err),
        leakage=frac * ec_factor * h_err,
        correction=-math.log2(2.0 / epsilon_hat**2) / params.N,
    )


def qkd_rate_new(
    N: int,
    m: int,
    b: BiasParameter | float,
    epsilon: float,
    w_q: float,
    ec_factor: float = 1.2,
) -> RateTerms:
    """Sampling-based BB84 key rate with leakage ``ec_factor * n * h(w_q + delta)``."""
    params = _params(N, m)
    b = as_bias(b)
    w_q = _check_wq(w_q)
    delta = delta_param(params.m, params.n, epsilon)
    argument = w_q + nu_param(b, params.m, epsilon) + delta
    frac = params.n / params.N
    return RateTerms(
        entropy=frac * (1.0 - bounded_binary_entropy(argument)),
        leakage=frac * ec_factor * bounded_binary_entropy(w_q + delta),
        correction=-math.log2(1.0 / epsilon) / params.N,
    )


@dataclass(frozen=True)
class OperatingPoint:
    """Fixed parameters of a sweep; the swept axis overrides one of them."""

    N: float = 1e10
    b: float = 0.0
    w_q: float = 0.05
    m_fraction: float = DEFAULT_SAMPLING_FRACTION
    budget: SecurityBudget = field(default_factory=SecurityBudget)
    pa_sign: Literal["additive", "subtractive"] = "additive"

    def counts(self) -> tuple[int, int]:
        N = int(round(self.N))
        return N, int(round(self.m_fraction * N))


@dataclass(frozen=True)
class RatePoint:
    """Both rates of one protocol at one operating point.

    For QKD, ``ours`` is the sampling-based ("new") rate and ``other`` the
    overlap-based ("old") one. ``error`` is set, and both terms are None,
    when the point lies outside the valid parameter domain.
    """

    protocol: str
    N: int
    m: int
    b: float
    w_q: float
    ours: Optional[RateTerms]
    other: Optional[RateTerms]
    error: Optional[str] = None

    @property
    def n(self) -> int:
        return self.N - self.m

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def rate_ours(self) -> float:
        return self.ours.clamped if self.ours else math.nan

    @property
    def rate_other(self) -> float:
        return self.other.clamped if self.other else math.nan

    @property
    def rate_max(self) -> float:
        if not self.ok:
            return math.nan
        return max(self.rate_ours, self.rate_other)

    @property
    def rate_ours_raw(self) -> float:
        return self.ours.raw if self.ours else math.nan

    @property
    def rate_other_raw(self) -> float:
        return self.other.raw if self.other else math.nan


def evaluate_point(protocol: Protocol, point: OperatingPoint) -> RatePoint:
    """Evaluate both rates of ``protocol``; domain errors become a flagged point."""
    N, m = point.counts()
    budget = point.budget
    try:
        if protocol == "qrng":
            ours = qrng_rate_ours(N, m, point.b, budget.epsilon, point.w_q, point.pa_sign)
            other = qrng_rate_other(N, m, point.b, budget.epsilon_prime, point.w_q)
        elif protocol == "qkd":
            ours = qkd_rate_new(N, m, point.b, budget.epsilon, point.w_q, budget.ec_factor)
            other = qkd_rate_old(N, m, point.b, budget.epsilon_hat, point.w_q, budget.ec_factor)
        else:
            raise ValueError(f"unknown protocol {protocol!r}")
    except ValueError as exc:
        if protocol not in ("qrng", "qkd"):
            raise
        return RatePoint(protocol, N, m, point.b, point.w_q, None, None, str(exc))
    return RatePoint(protocol, N, m, point.b, point.w_q, ours, other)


AXES = {"N": "N", "b": "b", "w_q": "w_q", "wq": "w_q"}


def sweep(
    protocol: Protocol,
    axis: Axis,
    fixed: OperatingPoint,
    grid: Sequence[float] | Iterable[float],
) -> list[RatePoint]:
    """Evaluate ``protocol`` along ``axis`` at every grid value, in grid order."""
    if axis not in AXES:
        raise ValueError(f"unknown axis {axis!r}; expected one of N, b, w_q")
    values = list(grid)
    if not values:
        raise ValueError("grid must be non-empty")
    attr = AXES[axis]
    return [evaluate_point(protocol, replace(fixed, **{attr: float(v)})) for v in values]
