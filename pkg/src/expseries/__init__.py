"""Toolkit for the exponential power sum over k of exp(-x * k**alpha).

The sum is rebuilt around an exact integer polynomial triangle whose rows
are generated by powers of the Cauchy-Euler operator x*d/dx acting on
exp(-x).  On top of that sit diagonal operator calculus for truncated power
series, a guarded Riemann zeta evaluator, several cross-checking evaluation
routes for the sum itself, and series expansions of elementary functions in
the triangle basis.  The ``expseries`` CLI exposes dataset emission and an
identity verification suite.
"""

from .errors import ConvergenceError, DomainError
from .evaluate import (
    ComplexGrid,
    EvalReport,
    SeriesQuery,
    closed_form_alpha1,
    complex_grid,
    eval_asymptotic,
    eval_derivative,
    eval_direct,
    eval_transformed,
    integral_residual,
    integral_to,
    total_integral,
    weighted_exp_sum,
)
from .expansions import (
    ComparisonRow,
    ExpansionResult,
    IdentityResidual,
    asymptotic_comparison,
    cos_series,
    exp_phase_series,
    gaussian_one_term,
    gaussian_series,
    gf_eval,
    poly_sum_residuals,
    sin_series,
    symmetric_gf_eval,
    trig_from_symmetric,
)
from .opcalc import (
    LaurentNegSeries,
    TruncatedSeries,
    derivative,
    euler_exp,
    euler_int,
    euler_opfunc,
    euler_pow,
    euler_trig,
    exp_poly_series,
    exp_series,
    geometric_series,
    mul_x,
    zeta_op,
)
from .polynomials import (
    IdentityCheck,
    OperatorPoly,
    StirlingTable,
    default_triangle,
    diagonal_high,
    diagonal_low,
    exp_weighted_integral,
    horner,
    iter_triangle_rows,
    poly_eval,
    poly_explicit,
    poly_from_coeff_recursion,
    poly_from_stirling,
    poly_next,
    stirling2,
    triangle,
    verify_identities,
)
from .zeta import ZetaConfig, zeta, zeta_d2, zeta_tail

__version__ = "0.1.0"

__all__ = [
    "ComparisonRow",
    "ComplexGrid",
    "ConvergenceError",
    "DomainError",
    "EvalReport",
    "ExpansionResult",
    "IdentityCheck",
    "IdentityResidual",
    "LaurentNegSeries",
    "OperatorPoly",
    "SeriesQuery",
    "StirlingTable",
    "TruncatedSeries",
    "ZetaConfig",
    "asymptotic_comparison",
    "closed_form_alpha1",
    "complex_grid",
    "cos_series",
    "default_triangle",
    "derivative",
    "diagonal_high",
    "diagonal_low",
    "euler_exp",
    "euler_int",
    "euler_opfunc",
    "euler_pow",
    "euler_trig",
    "eval_asymptotic",
    "eval_derivative",
    "eval_direct",
    "eval_transformed",
    "exp_phase_series",
    "exp_poly_series",
    "exp_series",
    "exp_weighted_integral",
    "gaussian_one_term",
    "gaussian_series",
    "geometric_series",
    "gf_eval",
    "horner",
    "integral_residual",
    "integral_to",
    "iter_triangle_rows",
    "mul_x",
    "poly_eval",
    "poly_explicit",
    "poly_from_coeff_recursion",
    "poly_from_stirling",
    "poly_next",
    "poly_sum_residuals",
    "sin_series",
    "stirling2",
    "symmetric_gf_eval",
    "total_integral",
    "triangle",
    "trig_from_symmetric",
    "verify_identities",
    "weighted_exp_sum",
    "zeta",
    "zeta_d2",
    "zeta_op",
    "zeta_tail",
]
