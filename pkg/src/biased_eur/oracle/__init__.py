"""Exact few-qubit computations used to check the entropy bound's ingredients."""
from .checks import (
    REPORT_HEADER,
    VerificationReport,
    ideal_ideal_gap,
    low_error_words,
    verify_hoeffding_step,
    verify_ideal_projection,
    verify_lemma3,
    verify_lemma3_helstrom,
    verify_overlaps,
    verify_superposition_lemma,
)
from .measure import (
    MeasurementResult,
    conditional_min_entropy_bit,
    guessing_probability,
    measure_and_trace,
    min_entropy_classical,
    min_entropy_helstrom,
    trace_norm,
)
from .states import (
    BasisFamily,
    DensityMatrix,
    StateVector,
    all_words,
    bell_superposition,
    bell_word_state,
    build_basis,
    build_depolarizing_state,
    overlap_matrix,
    random_amplitudes,
    with_environment,
)
