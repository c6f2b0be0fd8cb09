import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from biased_eur.math_core import (
    SubsetIndex,
    Word,
    binary_entropy,
    binomial_tail,
    bounded_binary_entropy,
    count_symbols,
    hamming_ball_log_bound,
    hamming_ball_size,
    hamming_distance,
    hoeffding_tail_bound,
    relative_hamming_weight,
)


def test_binary_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.25) == pytest.approx(0.811278124459133, abs=1e-12)


def test_binary_entropy_rejects_out_of_range():
    for p in (-0.1, 1.1, math.nan):
        with pytest.raises(ValueError):
            binary_entropy(p)


def test_bounded_entropy_saturates():
    assert bounded_binary_entropy(0.6) == 1.0
    assert bounded_binary_entropy(0.5) == 1.0
    assert bounded_binary_entropy(3.0) == 1.0
    assert bounded_binary_entropy(0.0) == 0.0
    assert bounded_binary_entropy(0.24) == pytest.approx(0.795040279384522, abs=1e-12)


@given(st.floats(0.0, 0.5), st.floats(0.0, 0.5))
def test_bounded_entropy_is_monotone(x, y):
    lo, hi = min(x, y), max(x, y)
    assert bounded_binary_entropy(lo) <= bounded_binary_entropy(hi) + 1e-15


@given(st.floats(0.0, 1.0))
def test_entropy_symmetric_and_bounded(p):
    assert 0.0 <= binary_entropy(p) <= 1.0
    assert binary_entropy(p) == pytest.approx(binary_entropy(1 - p), abs=1e-12)


@given(st.floats(1e-9, 1 - 1e-9))
@settings(max_examples=50)
def test_entropy_matches_reference(p):
    assert binary_entropy(p) == pytest.approx(float(ref.h(p)), abs=1e-12)


def test_relative_weight():
    assert relative_hamming_weight("0110") == 0.5
    assert relative_hamming_weight("0000") == 0.0
    assert relative_hamming_weight("10110") == 0.6


def test_relative_weight_rejects_non_binary():
    with pytest.raises(ValueError):
        relative_hamming_weight("0120")
    with pytest.raises(ValueError):
        relative_hamming_weight("")


def test_hamming_distance():
    assert hamming_distance("0123", "0123") == 0
    assert hamming_distance("00", "11") == 2
    assert hamming_distance("0132", "0312") == 2
    with pytest.raises(ValueError):
        hamming_distance("01", "011")


def test_count_symbols():
    assert count_symbols("0123", {1, 3}) == 2
    assert count_symbols("0000", {1, 3}) == 0
    assert count_symbols("113310", {1, 3}) == 5
    with pytest.raises(ValueError):
        count_symbols("0101", {5})


def test_word_parse_and_validate():
    w = Word.parse("0123", d=4)
    assert w.symbols == (0, 1, 2, 3)
    assert str(w) == "0123"
    with pytest.raises(ValueError):
        Word.parse("012", d=2)
    with pytest.raises(ValueError):
        Word((0, 1), d=3)


def test_subset_index_is_one_based():
    t = SubsetIndex.of([3, 1], 4)
    assert t.indices == (1, 3)
    assert t.mask().tolist() == [True, False, True, False]
    with pytest.raises(ValueError):
        SubsetIndex.of([0], 4)
    with pytest.raises(ValueError):
        SubsetIndex.of([1, 1], 4)


def test_ball_sizes():
    assert hamming_ball_size(4, 1) == 5
    assert hamming_ball_size(7, 0) == 1
    assert hamming_ball_size(3, 3) == 8


def test_ball_size_matches_enumeration():
    for n in range(1, 9):
        words = list(product((0, 1), repeat=n))
        for r in range(n + 1):
            assert hamming_ball_size(n, r) == sum(sum(w) <= r for w in words)


def test_ball_size_rejects_bad_input():
    with pytest.raises(ValueError):
        hamming_ball_size(3, 4)
    with pytest.raises(ValueError):
        hamming_ball_size(65, 1)


def test_ball_log_bound_values():
    assert hamming_ball_log_bound(4, 0.25) == pytest.approx(3.245112497836531, abs=1e-12)
    assert 2 ** hamming_ball_log_bound(4, 0.25) >= hamming_ball_size(4, 1)
    assert hamming_ball_log_bound(9, 0.5) == 9.0
    assert hamming_ball_log_bound(10, 0.0) == 0.0


@given(st.integers(1, 40), st.data())
def test_ball_bound_dominates(n, data):
    r = data.draw(st.integers(0, n))
    assert math.log2(hamming_ball_size(n, r)) <= hamming_ball_log_bound(n, r / n) + 1e-12


def test_binomial_tail_values():
    assert binomial_tail(7, 0.3, 0) == 1.0
    assert binomial_tail(2, 0.5, 2) == pytest.approx(0.25, abs=1e-15)
    # frozen from an exact rational sum
    assert binomial_tail(10, 0.04, 3) == pytest.approx(0.006213715991870833, abs=1e-12)
    assert binomial_tail(5, 0.2, 5) == pytest.approx(0.2**5, abs=1e-15)


@given(st.integers(1, 60), st.sampled_from([0.01, 0.04, 0.1, 0.25, 0.5]), st.data())
@settings(max_examples=60)
def test_binomial_tail_matches_exact_sum(m, p, data):
    k = data.draw(st.integers(0, m))
    exact = float(ref.binomial_tail(m, Fraction(p), k))
    assert binomial_tail(m, p, k) == pytest.approx(exact, rel=1e-10, abs=1e-300)


def test_binomial_tail_limits():
    with pytest.raises(ValueError):
        binomial_tail(100_001, 0.1, 5)
    with pytest.raises(ValueError):
        binomial_tail(10, 1.5, 1)
    with pytest.raises(ValueError):
        binomial_tail(5, 0.2, 6)


def test_hoeffding_values():
    assert hoeffding_tail_bound(30, 0.2, 0.2) == 1.0
    assert hoeffding_tail_bound(100, 0.04, 0.2) == pytest.approx(math.exp(-5.12), abs=1e-15)
    assert hoeffding_tail_bound(50, 0.1, 0.3) == pytest.approx(0.018315638888734, abs=1e-12)
    assert binomial_tail(50, 0.1, 15) == pytest.approx(7.383868610314841e-05, rel=1e-9)
    with pytest.raises(ValueError):
        hoeffding_tail_bound(10, 0.3, 0.2)


@given(
    st.integers(1, 300),
    st.sampled_from([0.01, 0.04, 0.16, 0.3]),
    st.floats(0.0, 0.5),
)
def test_hoeffding_dominates_tail(m, p, extra):
    nu = p + extra
    k = math.ceil(m * nu - 1e-9)
    assert binomial_tail(m, p, k) <= hoeffding_tail_bound(m, p, nu) + 1e-12
