"""Min-entropy bounds and finite-size rates under biased basis choice."""
from .math_core import (
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
from .protocols import (
    OperatingPoint,
    RatePoint,
    RateTerms,
    SecurityBudget,
    delta_prime,
    evaluate_point,
    gamma_fn,
    mu_param,
    qkd_rate_new,
    qkd_rate_old,
    qrng_rate_ours,
    qrng_rate_other,
    sweep,
)
from .sampling import (
    ErrorProbabilityReport,
    SamplingStrategy,
    classical_error_bound,
    ideal_word_binary,
    ideal_word_quaternary,
    monte_carlo_failure_estimate,
    reduce_quaternary_to_binary,
)
from .uncertainty import (
    BiasParameter,
    FiniteSizeParams,
    UncertaintyBound,
    asymptotic_bound_ours,
    asymptotic_bound_standard,
    best_asymptotic_bound,
    delta_param,
    failure_probability,
    nu_param,
    theorem_bound,
)

__version__ = "0.1.0"
