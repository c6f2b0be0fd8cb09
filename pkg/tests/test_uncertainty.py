import math

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

import reference as ref
from biased_eur.math_core import binary_entropy
from biased_eur.uncertainty import (
    BiasParameter,
    FiniteSizeParams,
    asymptotic_bound_ours,
    asymptotic_bound_standard,
    best_asymptotic_bound,
    delta_param,
    epsilon_for_failure,
    failure_probability,
    nu_param,
    smoothing_parameter,
    theorem_bound,
)

EPS = 1e-36
PARAMS = FiniteSizeParams.from_fraction(1e10)


def test_bias_parameter():
    b = BiasParameter(0.1)
    assert b.alpha == pytest.approx(math.sqrt(0.6))
    assert b.beta == pytest.approx(math.sqrt(0.4))
    assert b.p == pytest.approx(0.04)
    assert b.q == pytest.approx(0.96)
    assert BiasParameter(-0.2).magnitude == 0.2
    with pytest.raises(ValueError):
        BiasParameter(0.51)


def test_finite_size_params():
    assert (PARAMS.N, PARAMS.m, PARAMS.n) == (10**10, 7 * 10**8, 93 * 10**8)
    with pytest.raises(ValueError):
        FiniteSizeParams(10, 5)
    with pytest.raises(ValueError):
        FiniteSizeParams(10, 0)


def test_delta_value():
    expected = float(ref.delta(7 * 10**8, 93 * 10**8, mp.mpf("1e-36")))
    assert delta_param(7 * 10**8, 93 * 10**8, EPS) == pytest.approx(expected, rel=1e-12)
    assert delta_param(7 * 10**8, 93 * 10**8, EPS) == pytest.approx(4.877e-4, abs=1e-7)


def test_delta_domain():
    with pytest.raises(ValueError):
        delta_param(10, 10, 2.0)
    with pytest.raises(ValueError):
        delta_param(0, 10, 0.1)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_delta_decreases_when_m_doubles(m, n):
    assert delta_param(2 * m, n, 1e-10) < delta_param(m, n, 1e-10)


def test_nu_values():
    assert nu_param(0.0, 7 * 10**8, EPS) == pytest.approx(3.1068647995548e-3, rel=1e-12)
    assert nu_param(0.2, 10**30, EPS) == pytest.approx(0.16, abs=1e-12)
    with pytest.raises(ValueError):
        nu_param(0.1, 100, 0.5)


@given(st.floats(-0.5, 0.5), st.integers(1, 10**12), st.floats(1e-40, 0.49))
def test_nu_at_least_bias_term(b, m, eps):
    assert nu_param(b, m, eps) >= 4 * b * b


def test_theorem_bound_at_reference_point():
    bound = theorem_bound(PARAMS, 0.0, EPS, 0.05)
    assert bound.argument == pytest.approx(0.05359454044397057, rel=1e-12)
    assert bound.min_entropy_lower_bound / PARAMS.n == pytest.approx(0.6985256124893599, abs=1e-10)
    assert bound.per_signal == pytest.approx(0.6985256124893599, abs=1e-10)


def test_theorem_bound_saturates_to_zero():
    assert theorem_bound(PARAMS, 0.3, EPS, 0.2).min_entropy_lower_bound == 0.0
    # sqrt(1/8) is the largest bias with a positive bound at zero noise
    large = FiniteSizeParams.from_fraction(1e16)
    assert theorem_bound(large, 0.36, EPS, 0.0).min_entropy_lower_bound == 0.0
    assert theorem_bound(large, 0.34, EPS, 0.0).min_entropy_lower_bound > 0.0


@given(st.floats(0, 0.5), st.floats(0, 0.5))
def test_theorem_bound_stays_in_range(b, wq):
    bound = theorem_bound(PARAMS, b, EPS, wq)
    assert 0.0 <= bound.min_entropy_lower_bound <= PARAMS.n


def test_failure_probability_constant():
    assert failure_probability(EPS) == pytest.approx(2.5198420997897464e-12, abs=1e-20)
    assert epsilon_for_failure(failure_probability(1e-20)) == pytest.approx(1e-20, rel=1e-9)
    assert smoothing_parameter(EPS) == pytest.approx(8e-36 + 3 * (2e-36) ** (1 / 3))


def test_asymptotic_ours_values():
    assert asymptotic_bound_ours(0, 0) == 1.0
    assert asymptotic_bound_ours(0.1, 0.2) == pytest.approx(0.2049597206154778, abs=1e-12)
    assert asymptotic_bound_ours(0.3, 0.2) == 0.0


def test_asymptotic_standard_values():
    assert asymptotic_bound_standard(0, 0) == 1.0
    assert asymptotic_bound_standard(0.1, 0.2) == pytest.approx(0.01503749927884385, abs=1e-12)
    assert asymptotic_bound_standard(0.5, 0.1) == 0.0
    with pytest.raises(ValueError):
        asymptotic_bound_standard(-0.1, 0.1)


@given(st.floats(0, 0.5))
def test_bounds_agree_without_bias(q):
    assert asymptotic_bound_ours(0, q) == pytest.approx(asymptotic_bound_standard(0, q), abs=1e-12)
    assert asymptotic_bound_ours(0, q) == pytest.approx(1 - binary_entropy(q), abs=1e-12)


def test_best_bound_picks_larger():
    assert best_asymptotic_bound(0.1, 0.2) == asymptotic_bound_ours(0.1, 0.2)
    # without noise at b = 0.1 the sampling bound is still ahead: 0.758 vs 0.737
    assert best_asymptotic_bound(0.1, 0.0) == pytest.approx(0.7577078109, abs=1e-9)
    assert best_asymptotic_bound(-0.1, 0.2) == best_asymptotic_bound(0.1, 0.2)


@given(st.floats(0, 0.5), st.floats(0, 0.5))
def test_best_bound_dominates_both(b, q):
    best = best_asymptotic_bound(b, q)
    assert best >= asymptotic_bound_ours(b, q)
    assert best >= asymptotic_bound_standard(b, q)


@given(st.floats(0, 0.5), st.floats(0, 0.5), st.floats(0, 0.5))
def test_theorem_bound_nonincreasing_in_noise_and_bias(b, w1, w2):
    lo, hi = min(w1, w2), max(w1, w2)
    assert theorem_bound(PARAMS, b, EPS, hi).min_entropy_lower_bound <= (
        theorem_bound(PARAMS, b, EPS, lo).min_entropy_lower_bound
    )
    b_lo, b_hi = sorted((abs(b), abs(w1)))
    assert theorem_bound(PARAMS, b_hi, EPS, lo).min_entropy_lower_bound <= (
        theorem_bound(PARAMS, b_lo, EPS, lo).min_entropy_lower_bound
    )
    assert theorem_bound(PARAMS, -b, EPS, lo) == theorem_bound(PARAMS, b, EPS, lo)


@given(st.floats(4, 15), st.floats(0.1, 3), st.floats(0, 0.35), st.floats(0, 0.3))
def test_theorem_bound_nondecreasing_in_signals(exp, step, b, wq):
    small = theorem_bound(FiniteSizeParams.from_fraction(10**exp), b, EPS, wq)
    large = theorem_bound(FiniteSizeParams.from_fraction(10 ** (exp + step)), b, EPS, wq)
    assert large.min_entropy_lower_bound >= small.min_entropy_lower_bound
    assert large.per_signal >= small.per_signal - 1e-12
