import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from biased_eur.math_core import binary_entropy
from biased_eur.oracle import (
    DensityMatrix,
    StateVector,
    all_words,
    bell_superposition,
    bell_word_state,
    build_basis,
    build_depolarizing_state,
    guessing_probability,
    ideal_ideal_gap,
    measure_and_trace,
    min_entropy_classical,
    min_entropy_helstrom,
    overlap_matrix,
    random_amplitudes,
    trace_norm,
    verify_hoeffding_step,
    verify_ideal_projection,
    verify_lemma3,
    verify_lemma3_helstrom,
    verify_overlaps,
    verify_superposition_lemma,
    with_environment,
)

R = 1 / math.sqrt(2)


def test_x_alpha_is_hadamard_without_bias():
    basis = build_basis("X_alpha", 0.0)
    assert np.allclose(basis[0], [R, R])
    assert np.allclose(basis[1], [R, -R])


def test_x_alpha_collapses_to_z_at_full_bias():
    basis = build_basis("X_alpha", 0.5)
    assert np.allclose(basis[0], [1, 0])
    assert np.allclose(basis[1], [0, -1])


def test_x_alpha_bell_equals_bell_without_bias():
    bell = build_basis("Bell").matrix()
    xbell = build_basis("X_alpha_Bell", 0.0).matrix()
    for u, v in zip(bell, xbell):
        assert abs(abs(np.vdot(u, v)) - 1.0) < 1e-12


@given(st.floats(-0.5, 0.5))
def test_all_bases_orthonormal(b):
    for kind in ("Z", "X_alpha", "Bell", "X_alpha_Bell"):
        mat = build_basis(kind, b).matrix()
        assert np.allclose(mat.conj() @ mat.T, np.eye(len(mat)), atol=1e-12)


def test_unknown_basis():
    with pytest.raises(ValueError):
        build_basis("Y", 0.0)


def test_overlap_matrix_values():
    assert np.allclose(overlap_matrix(0.0), np.eye(4), atol=1e-12)
    expected = np.array(
        [[1, 0, 0, 0], [0, 0.96, 0.04, 0], [0, 0.04, 0.96, 0], [0, 0, 0, 1]]
    )
    assert np.abs(overlap_matrix(0.1) - expected).max() < 1e-12


@given(st.floats(-0.5, 0.5))
def test_overlap_rows_sum_to_one(b):
    m = overlap_matrix(b)
    assert np.allclose(m.sum(axis=0), 1.0, atol=1e-12)
    assert np.allclose(m.sum(axis=1), 1.0, atol=1e-12)


def test_verify_overlaps_passes():
    report = verify_overlaps(np.linspace(-0.5, 0.5, 101))
    assert report.passed and report.measured < 1e-12


def test_depolarizing_state_basic():
    state = build_depolarizing_state(1, [0], [1.0])
    assert np.allclose(state.amplitudes, np.kron(bell_word_state("0"), [1, 0]))
    pair = build_depolarizing_state(1, ["0", "2"], [R, R])
    coeffs = pair.amplitudes.reshape(4, 2)
    bell = build_basis("Bell").bras()
    env = bell @ coeffs  # rows: environment vector attached to each Bell state
    assert abs(np.vdot(env[0], env[2])) < 1e-12


def test_depolarizing_state_random_norm():
    rng = np.random.default_rng(0)
    words = [all_words(2)[i] for i in rng.choice(16, 6, replace=False)]
    state = build_depolarizing_state(2, words, random_amplitudes(rng, 6))
    assert abs(np.vdot(state.amplitudes, state.amplitudes).real - 1.0) < 1e-10


def test_state_validation():
    with pytest.raises(ValueError):
        StateVector(np.ones(3))
    with pytest.raises(ValueError):
        StateVector(np.ones(4))
    with pytest.raises(ValueError):
        build_depolarizing_state(5, ["00000"], [1.0])
    with pytest.raises(ValueError):
        build_depolarizing_state(1, ["0", "0"], [R, R])
    with pytest.raises(ValueError):
        build_depolarizing_state(1, ["0", "1"], [1.0, 1.0])
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))


def test_measure_bell_in_z():
    result = measure_and_trace(StateVector(bell_word_state("0")), "ZZ")
    nonzero = {k: v for k, v in result.probabilities.items() if v > 1e-15}
    assert nonzero == pytest.approx({(0, 0): 0.5, (1, 1): 0.5})


def test_paired_povm_outcomes():
    phi0 = StateVector(bell_word_state("0"))
    assert measure_and_trace(phi0, "PP", 0.0).probabilities.get((1,), 0.0) == pytest.approx(0.0, abs=1e-15)
    phi1 = StateVector(bell_word_state("1"))
    assert measure_and_trace(phi1, "PP", 0.1).probabilities[(1,)] == pytest.approx(0.96, abs=1e-12)


@given(st.floats(-0.5, 0.5), st.integers(0, 3))
@settings(max_examples=40)
def test_povm_error_probability_matches_overlaps(b, i):
    # X_1 fires for the X_alpha-Bell components 1 and 3
    m = overlap_matrix(b)
    result = measure_and_trace(StateVector(bell_word_state(str(i))), "PP", b)
    assert result.probabilities.get((1,), 0.0) == pytest.approx(m[1, i] + m[3, i], abs=1e-12)


def test_kept_register_state():
    result = measure_and_trace(StateVector(bell_word_state("0")), "ZK")
    assert np.allclose(result.states[(0,)].matrix, np.diag([1, 0]))
    assert result.kept == (1,)


def test_pattern_validation():
    state = StateVector(bell_word_state("0"))
    for bad in ("Z", "ZQ", "PZ"):
        with pytest.raises(ValueError):
            measure_and_trace(state, bad)


def test_min_entropy_classical():
    assert min_entropy_classical([0.25] * 4) == 2.0
    assert min_entropy_classical([1.0, 0.0]) == 0.0
    assert min_entropy_classical({"a": 0.5, "b": 0.25, "c": 0.25}) == 1.0
    with pytest.raises(ValueError):
        min_entropy_classical([0.5, 0.6])


def test_helstrom_cases():
    rho = np.eye(2) / 2
    assert min_entropy_helstrom(0.5, rho, 0.5, rho) == pytest.approx(1.0)
    assert min_entropy_helstrom(0.5, np.diag([1, 0]), 0.5, np.diag([0, 1])) == pytest.approx(0.0, abs=1e-12)
    u = np.array([1, 0])
    v = np.array([R, R])
    value = min_entropy_helstrom(0.5, np.outer(u, u), 0.5, np.outer(v, v))
    # -log2(1/2 + sqrt(1/2)/2), from a 50-digit evaluation
    assert value == pytest.approx(0.22844669683638803, abs=1e-12)
    assert 0.5 + 0.5 * float(ref.trace_norm_pure_difference(0.5)) == pytest.approx(
        guessing_probability(0.5, np.outer(u, u), 0.5, np.outer(v, v)), abs=1e-12
    )


def test_trace_norm():
    assert trace_norm(np.diag([0.5, -0.25])) == pytest.approx(0.75)


def test_low_error_entropy_examples():
    report = verify_lemma3(3, 1 / 3, 200, seed=0)
    assert report.bound == pytest.approx(3 * (1 - binary_entropy(1 / 3)))
    assert report.bound == pytest.approx(0.2451124978, abs=1e-9)
    assert report.passed
    exact = verify_lemma3(1, 0.0, 50, seed=0)
    assert exact.passed and exact.measured == pytest.approx(1.0)
    vacuous = verify_lemma3(2, 0.5, 50, seed=0)
    assert vacuous.bound == 0.0 and vacuous.passed


def test_low_error_entropy_detects_corrupt_bound():
    report = verify_lemma3(1, 0.0, 20, seed=0, bound_offset=1.0)
    assert not report.passed and report.violations == 20


def test_low_error_entropy_is_deterministic():
    a = verify_lemma3(2, 0.0, 30, seed=9)
    b = verify_lemma3(2, 0.0, 30, seed=9)
    assert a.csv_row() == b.csv_row()


def test_helstrom_suite():
    for env in ("orthogonal", "random"):
        assert verify_lemma3_helstrom(0.0, 200, seed=1, environment=env).passed
        assert verify_lemma3_helstrom(1.0, 200, seed=1, environment=env).passed
    with pytest.raises(ValueError):
        verify_lemma3_helstrom(0.0, 1, seed=1, environment="thermal")


def test_superposition_suite():
    assert verify_superposition_lemma(2, ["00", "11"], 20, seed=0).passed
    single = verify_superposition_lemma(2, ["01"], 5, seed=0, b=0.2)
    assert single.passed and single.measured == pytest.approx(0.0, abs=1e-12)
    assert verify_superposition_lemma(3, None, 300, seed=2, b=0.3).passed
    with pytest.raises(ValueError):
        verify_superposition_lemma(4, None, 1, seed=0)


def test_ideal_projection_of_ideal_state_is_exact():
    state = build_depolarizing_state(3, ["000"], [1.0])
    report = verify_ideal_projection(state, 3, 1, 0.4)
    assert report.passed and report.measured == pytest.approx(0.0, abs=1e-12)


def test_ideal_projection_random_states():
    rng = np.random.default_rng(5)
    words = all_words(3)
    for delta in (0.4, 0.6):
        state = build_depolarizing_state(3, words, random_amplitudes(rng, len(words)))
        report = verify_ideal_projection(state, 3, 1, delta)
        assert report.passed
        assert report.parameters["depolarizing"]
    plain = bell_superposition(3, words, random_amplitudes(rng, len(words)))
    assert verify_ideal_projection(plain, 3, 1, 0.6).passed


def test_ideal_projection_validation():
    state = build_depolarizing_state(2, ["00"], [1.0])
    with pytest.raises(ValueError):
        verify_ideal_projection(state, 2, 1, 0.4)


def test_ideal_ideal_gap_without_bias_is_zero():
    words = all_words(2)
    rng = np.random.default_rng(3)
    state = build_depolarizing_state(2, words, random_amplitudes(rng, len(words)))
    loss, fidelity_loss = ideal_ideal_gap(state, 2, 0.0, 0.0)
    assert loss == pytest.approx(0.0, abs=1e-12)
    assert fidelity_loss == pytest.approx(0.0, abs=1e-12)


def test_hoeffding_step_suite():
    for m, b, nu in ((1, 0.1, 0.5), (2, 0.2, 0.5), (3, 0.3, 0.34)):
        assert verify_hoeffding_step(m, b, nu, 30, seed=0).passed


def test_with_environment_is_not_renormalized():
    env = [np.array([1, 0]), np.array([1, 0])]
    state = with_environment(1, ["0", "1"], [R, R], env)
    assert abs(np.vdot(state.amplitudes, state.amplitudes).real - 1.0) < 1e-10
    with pytest.raises(ValueError):
        with_environment(1, ["0"], [1.0], [np.array([2.0, 0.0])])
