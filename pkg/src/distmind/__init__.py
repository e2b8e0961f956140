"""distmind: recovery of hidden bounded integer vectors from separable
distance queries, with honest/adversarial oracles and lower-bound calculators.
"""

from ._kernels import HAVE_ACCEL
from .bounds import (
    BoundsReport,
    lower_bound_linf,
    lower_bound_lp,
    lp_ball_log_volume,
    lp_ball_volume,
    noisy_bound_exponent,
)
from .codebreaker import (
    OracleInconsistencyError,
    QueryPlan,
    RecoveryResult,
    choose_strategy,
    run_strategy,
    solve_l2_direct,
    solve_linf,
    solve_naive_basis,
    solve_separable,
)
from .codemaker import (
    HiddenVector,
    InvalidQueryError,
    NoisyAdversary,
    Transcript,
    expected_query_power,
    make_honest_oracle,
    make_noisy_adversary,
    wrap_counting,
)
from .detecting import (
    CapacityError,
    DecodeError,
    DetectingMatrix,
    DigitImageSet,
    DigitTuple,
    GroupPlan,
    RadixProfile,
    construct,
    decode_digits,
    load_matrix,
    plan_groups,
    plan_size,
    save_matrix,
    spectrum_certificate,
)
from .fourier import CharacterIndex, FourierSpectrum, HypercubeFunction, char_eval, inverse_wht, wht
from .measures import (
    CHEBYSHEV,
    DegenerateMeasureError,
    OddProfile,
    SeparableMeasure,
    build_odd_profile,
    eval_distance,
    even_odd_decompose,
    make_measure,
    parse_measure,
)
from .verification import ExhaustiveReport, detecting_property_check, exhaustive_recovery_check

__version__ = "0.1.0"

__all__ = [
    "BoundsReport", "CapacityError", "CharacterIndex", "CHEBYSHEV", "DecodeError",
    "DegenerateMeasureError", "DetectingMatrix", "DigitImageSet", "DigitTuple",
    "ExhaustiveReport", "FourierSpectrum", "GroupPlan", "HAVE_ACCEL", "HiddenVector",
    "HypercubeFunction", "InvalidQueryError", "NoisyAdversary", "OddProfile",
    "OracleInconsistencyError", "QueryPlan", "RadixProfile", "RecoveryResult",
    "SeparableMeasure", "Transcript", "build_odd_profile", "char_eval",
    "choose_strategy", "construct", "decode_digits", "detecting_property_check",
    "eval_distance", "even_odd_decompose", "exhaustive_recovery_check",
    "expected_query_power", "inverse_wht", "load_matrix", "lower_bound_linf",
    "lower_bound_lp", "lp_ball_log_volume", "lp_ball_volume", "make_honest_oracle",
    "make_measure", "make_noisy_adversary", "noisy_bound_exponent", "parse_measure",
    "plan_groups", "plan_size", "run_strategy", "save_matrix", "solve_l2_direct",
    "solve_linf", "solve_naive_basis", "solve_separable", "spectrum_certificate",
    "wht", "wrap_counting",
]
