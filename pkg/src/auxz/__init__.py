"""Multiprecision toolkit for the Riemann auxiliary function R(s) and explicit zeta bounds.

The pieces:

* :mod:`auxz.numerics` holds precision contexts and reference zeta, log-gamma and chi.
* :mod:`auxz.sums` has finite zeta sums, dyadic suprema S(X,t) and S_sigma(X,t), and the long-sum tail bound.
* :mod:`auxz.auxiliary` evaluates R(s) by contour quadrature and checks its approximation bounds.
* :mod:`auxz.zeros` counts zeros of R by the argument principle and refines them by Newton's method.
* :mod:`auxz.bounds` covers the van der Corput constants, the zeta lower bounds and the threshold solver.
* :mod:`auxz.cli` runs grid checks and writes JSON or CSV reports.
"""

from .auxiliary import (
    ContourSpec,
    auto_contour,
    functional_equation_residual,
    partial_bound_rhs,
    r_eval,
    r_eval_fast,
    r_eval_with_error,
    r_minus_one_bound,
    rs_bound_cases,
    rs_bound_rhs,
    verify_r_minus_one,
    verify_rzeta_bound,
)
from .bounds import (
    COROLLARY_COEFFS,
    PAPER_TAU0,
    ZETA_INVERSE_COEFF,
    FlaggedBound,
    ThresholdResult,
    VdcConstants,
    a_inversions,
    constants_default,
    corollary_rhs,
    dyadic_tau_threshold,
    final_inequality_check,
    mainbound_rhs,
    minimal_t_rect32,
    rect32_check,
    rect_boundary_check_s3,
    solve_threshold,
    tau0_conditions,
    threshold_gap,
    van1_rhs,
    vdc_d2_bound,
    vdc_d3_bound,
    verify_domination,
    verify_lemma1,
    verify_vdc2,
    verify_vdc3,
    zeta_inverse_bound,
    zeta_lower_bound,
)
from .errors import AuxzError, BoundaryZeroError, ConvergenceError, DomainError, PoleError, SizeError
from .numerics import (
    PrecisionCtx,
    StripPoint,
    bernoulli,
    chi,
    complex_zeta,
    dirichlet_term,
    log_gamma,
    real_zeta,
    zeta_with_error,
)
from .records import AxisGrid, CheckRecord, GridSpec, Rectangle, make_record
from .sums import (
    ExponentAlpha,
    SupSumResult,
    exponent_alpha,
    maclaurin_tail_bound,
    sup_sum,
    sup_sum_sigma,
    verify_abel,
    verify_maclaurin,
    zeta_sum,
)
from .zeros import RZero, find_zeros, zero_count

__version__ = "0.1.0"

__all__ = [
    "a_inversions",
    "auto_contour",
    "AuxzError",
    "AxisGrid",
    "bernoulli",
    "BoundaryZeroError",
    "CheckRecord",
    "chi",
    "complex_zeta",
    "constants_default",
    "ContourSpec",
    "ConvergenceError",
    "COROLLARY_COEFFS",
    "corollary_rhs",
    "dirichlet_term",
    "DomainError",
    "dyadic_tau_threshold",
    "exponent_alpha",
    "ExponentAlpha",
    "final_inequality_check",
    "find_zeros",
    "FlaggedBound",
    "functional_equation_residual",
    "GridSpec",
    "log_gamma",
    "maclaurin_tail_bound",
    "mainbound_rhs",
    "make_record",
    "minimal_t_rect32",
    "PAPER_TAU0",
    "partial_bound_rhs",
    "PoleError",
    "PrecisionCtx",
    "r_eval",
    "r_eval_fast",
    "r_eval_with_error",
    "r_minus_one_bound",
    "real_zeta",
    "rect32_check",
    "rect_boundary_check_s3",
    "Rectangle",
    "rs_bound_cases",
    "rs_bound_rhs",
    "RZero",
    "SizeError",
    "solve_threshold",
    "StripPoint",
    "sup_sum",
    "sup_sum_sigma",
    "SupSumResult",
    "tau0_conditions",
    "threshold_gap",
    "ThresholdResult",
    "van1_rhs",
    "vdc_d2_bound",
    "vdc_d3_bound",
    "VdcConstants",
    "verify_abel",
    "verify_domination",
    "verify_lemma1",
    "verify_maclaurin",
    "verify_r_minus_one",
    "verify_rzeta_bound",
    "verify_vdc2",
    "verify_vdc3",
    "zero_count",
    "zeta_inverse_bound",
    "ZETA_INVERSE_COEFF",
    "zeta_lower_bound",
    "zeta_sum",
    "zeta_with_error",
    "__version__",
]
