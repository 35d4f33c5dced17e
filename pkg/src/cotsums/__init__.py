"""Cotangent sums: exact Dedekind arithmetic, regularized series,
reciprocity residuals, and continued-fraction bounds."""

from .bounds import TheoremMtCase, check_thm_mt, lemma_ml_decompose, standard_suite
from .numtheory import (
    ContinuedFraction,
    continuants,
    continued_fraction,
    cross_continuant_check,
    from_quotients,
    mod_inverse,
    parse_fraction,
    reversed_star,
)
from .piecewise import PiecewisePoly, indicator, linear_combine, polynomial
from .reciprocity import (
    BoundReport,
    ReciprocityReport,
    ReductionDegenerateError,
    bound_sf,
    bound_v1,
    mcc_check,
    mcc_reduce,
    prop_mp_residual,
)
from .specialfn import (
    DEFAULT_CONTEXT,
    PoleError,
    PrecisionContext,
    cot_pi,
    digamma,
    log_minus,
    sawtooth,
)
from .sums import (
    SumValue,
    cot_dft,
    dedekind_cot,
    dedekind_exact,
    partial_cot,
    partial_cot_profile,
    s_f,
    vasyunin,
)
from .verify import DEFAULT_SEED, SUITES, SweepConfig, run_bench
from .vseries import V1Args, V2Args, beta_of, v1_closed, v1_truncated, v2_auto_blocks, v2_eval

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ContinuedFraction",
    "DEFAULT_CONTEXT",
    "DEFAULT_SEED",
    "PiecewisePoly",
    "PoleError",
    "PrecisionContext",
    "ReciprocityReport",
    "ReductionDegenerateError",
    "SUITES",
    "SumValue",
    "SweepConfig",
    "TheoremMtCase",
    "V1Args",
    "V2Args",
    "beta_of",
    "bound_sf",
    "bound_v1",
    "check_thm_mt",
    "continuants",
    "continued_fraction",
    "cot_dft",
    "cot_pi",
    "cross_continuant_check",
    "dedekind_cot",
    "dedekind_exact",
    "digamma",
    "from_quotients",
    "indicator",
    "lemma_ml_decompose",
    "linear_combine",
    "log_minus",
    "mcc_check",
    "mcc_reduce",
    "mod_inverse",
    "parse_fraction",
    "partial_cot",
    "partial_cot_profile",
    "polynomial",
    "prop_mp_residual",
    "reversed_star",
    "run_bench",
    "s_f",
    "sawtooth",
    "standard_suite",
    "v1_closed",
    "v1_truncated",
    "v2_auto_blocks",
    "v2_eval",
    "vasyunin",
    "__version__",
]
