"""Series expansions of elementary functions over the polynomial triangle.

The exponential generating function of the triangle,

    sum_m p_m(x) t^m / m! = exp(x - x*exp(t)),

and its symmetric form exp(-x*y) = sum_m p_m(x) ln(y+1)^m / m! yield series
for exp, sin, cos and the Gaussian in terms of the p_m.  Every evaluator
here records the full partial-sum trajectory, because how these series
approach their limits (through complex detours, say) is part of what the
data is for.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .evaluate import SeriesQuery, eval_asymptotic, eval_direct
from .polynomials import OperatorPoly, horner
from .summation import KahanSum
from .zeta import ZetaConfig

_HALF_PI = math.pi / 2.0
_LN2 = math.log(2.0)
_E = math.e


@dataclass
class ExpansionResult:
    """Partial-sum trajectory of one expansion, with its reference value."""

    partial_sums: tuple
    final: complex
    terms: int
    reference: complex | None = None
    residual: float | None = None


def _depth_check(max_terms: int, triangle: Sequence[OperatorPoly], need_extra: int = 0):
    if max_terms + need_extra > len(triangle) - 1:
        raise DomainError(
            f"triangle depth {len(triangle) - 1} cannot serve {max_terms} terms"
        )


def _result(partials: list, reference) -> ExpansionResult:
    final = partials[-1]
    return ExpansionResult(
        tuple(partials), final, len(partials), reference, abs(final - reference)
    )


def gf_eval(
    x: float, t: float, max_terms: int, triangle: Sequence[OperatorPoly]
) -> ExpansionResult:
    """Partial sums of sum_m p_m(x) t^m / m! against exp(x - x*exp(t)).

    Stops early once three consecutive terms are negligible.
    """
    _depth_check(max_terms, triangle)
    reference = math.exp(x - x * math.exp(t))
    acc = KahanSum()
    partials = []
    coef = 1.0
    small = 0
    for m in range(max_terms + 1):
        term = coef * triangle[m].eval(x)
        acc.add(term)
        partials.append(acc.value)
        small = small + 1 if abs(term) <= 1e-16 * max(1.0, abs(acc.value)) else 0
        if m >= 4 and small >= 3:
            break
        coef *= t / (m + 1)
    return _result(partials, reference)


def symmetric_gf_eval(
    x: float, y: float, max_terms: int, triangle: Sequence[OperatorPoly]
) -> ExpansionResult:
    """Partial sums of sum_m p_m(x) ln(y+1)^m / m! against exp(-x*y).

    Symmetric under swapping x and y; both orders converge to the same
    reference.
    """
    if not y > -1.0:
        raise DomainError("symmetric form needs y > -1")
    _depth_check(max_terms, triangle)
    w = math.log1p(y)
    reference = math.exp(-x * y)
    acc = KahanSum()
    partials = []
    coef = 1.0
    small = 0
    for m in range(max_terms + 1):
        term = coef * triangle[m].eval(x)
        acc.add(term)
        partials.append(acc.value)
        small = small + 1 if abs(term) <= 1e-16 * max(1.0, abs(acc.value)) else 0
        if m >= 4 and small >= 3:
            break
        coef *= w / (m + 1)
    return _result(partials, reference)


# -- trigonometric series -----------------------------------------------------

def _trig_reduce(x: float, want: str) -> tuple[str, float, float]:
    # Fold any argument into [0, pi/4] using periodicity and cofunctions.
    r = math.fmod(x, 2.0 * math.pi)
    if r < 0.0:
        r += 2.0 * math.pi
    if want == "cos":
        return _trig_reduce_sin(r + _HALF_PI)
    return _trig_reduce_sin(r)


def _trig_reduce_sin(r: float) -> tuple[str, float, float]:
    r = math.fmod(r, 2.0 * math.pi)
    quadrant, u = divmod(r, _HALF_PI)
    table = {0: ("sin", 1.0), 1: ("cos", 1.0), 2: ("sin", -1.0), 3: ("cos", -1.0)}
    func, sign = table[int(quadrant) % 4]
    if u > math.pi / 4.0:
        func = "cos" if func == "sin" else "sin"
        u = _HALF_PI - u
    return func, sign, u


def _trig_terms(func: str, u: float, j: int, triangle: Sequence[OperatorPoly]) -> float:
    damp = math.exp(-u)
    if func == "sin":
        m = 2 * j + 1
        return -damp * triangle[m].eval(u) * _HALF_PI**m * (-1.0) ** j / math.factorial(m)
    m = 2 * j
    return damp * triangle[m].eval(u) * _HALF_PI**m * (-1.0) ** j / math.factorial(m)


def _trig_series(
    want: str,
    x: float,
    tol: float,
    triangle: Sequence[OperatorPoly],
    reduce_quadrant: bool,
    max_terms: int,
) -> ExpansionResult:
    if not tol > 0:
        raise DomainError("tol must be positive")
    if reduce_quadrant:
        func, sign, u = _trig_reduce(x, want)
    else:
        if not 0.0 <= x < _HALF_PI:
            raise DomainError(
                "series valid on [0, pi/2); pass reduce_quadrant=True to fold"
            )
        func, sign, u = want, 1.0, x
    reference = math.sin(x) if want == "sin" else math.cos(x)
    acc = KahanSum()
    partials = []
    for j in range(max_terms):
        if (2 * j + 1 if func == "sin" else 2 * j) > len(triangle) - 1:
            break
        acc.add(_trig_terms(func, u, j, triangle))
        partials.append(sign * acc.value)
        # stop with margin so squared identities stay inside 2*tol
        if abs(partials[-1] - reference) <= 0.45 * tol:
            break
    return _result(partials, reference)


def sin_series(
    x: float,
    tol: float,
    triangle: Sequence[OperatorPoly],
    reduce_quadrant: bool = False,
    max_terms: int = 200,
) -> ExpansionResult:
    """Odd-row expansion of sin; reference-driven adaptive term count."""
    return _trig_series("sin", x, tol, triangle, reduce_quadrant, max_terms)


def cos_series(
    x: float,
    tol: float,
    triangle: Sequence[OperatorPoly],
    reduce_quadrant: bool = False,
    max_terms: int = 200,
) -> ExpansionResult:
    """Even-row expansion of cos; reference-driven adaptive term count."""
    return _trig_series("cos", x, tol, triangle, reduce_quadrant, max_terms)


def exp_phase_series(
    x: float, sign: int, max_terms: int, triangle: Sequence[OperatorPoly]
) -> ExpansionResult:
    """Partial sums of sum_m (pi/2)^m p_m(x) (sign*i)^m / m! -> exp(x*(1 - sign*i))."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    _depth_check(max_terms, triangle)
    reference = cmath.exp(complex(x, -sign * x))
    acc = KahanSum(0j)
    partials = []
    coef = 1.0 + 0j
    step = _HALF_PI * complex(0.0, sign)
    small = 0
    for m in range(max_terms + 1):
        term = coef * triangle[m].eval(x)
        acc.add(term)
        partials.append(acc.value)
        small = small + 1 if abs(term) <= 1e-16 * max(1.0, abs(acc.value)) else 0
        if m >= 4 and small >= 3:
            break
        coef *= step / (m + 1)
    return _result(partials, reference)


def trig_from_symmetric(
    z: complex,
    max_terms: int,
    triangle: Sequence[OperatorPoly],
    tol: float = 1e-7,
) -> tuple[ExpansionResult, ExpansionResult]:
    """sin and cos of a complex argument from the symmetric expansion.

    Each row m contributes ln(2)^m p_m(-iz) / m! and ln(2)^m p_m(iz) / m!,
    recorded as two separate accumulation steps: the trajectory runs through
    genuinely complex values and the imaginary parts only cancel as terms
    accumulate, which is exactly the behavior the partial sums are kept to
    show.
    """
    _depth_check(max_terms, triangle)
    z = complex(z)
    sin_ref, cos_ref = cmath.sin(z), cmath.cos(z)
    sin_acc, cos_acc = KahanSum(0j), KahanSum(0j)
    sin_partials: list[complex] = []
    cos_partials: list[complex] = []
    coef = 1.0
    for m in range(max_terms + 1):
        minus = coef * triangle[m].eval(-1j * z)
        plus = coef * triangle[m].eval(1j * z)
        for piece_sin, piece_cos in ((-0.5j * minus, 0.5 * minus), (0.5j * plus, 0.5 * plus)):
            sin_acc.add(piece_sin)
            cos_acc.add(piece_cos)
            sin_partials.append(sin_acc.value)
            cos_partials.append(cos_acc.value)
        if (
            m >= 4
            and abs(sin_partials[-1] - sin_ref) <= 0.45 * tol
            and abs(cos_partials[-1] - cos_ref) <= 0.45 * tol
        ):
            break
        coef *= _LN2 / (m + 1)
    return _result(sin_partials, sin_ref), _result(cos_partials, cos_ref)


# -- Gaussian -----------------------------------------------------------------

def gaussian_series(
    x: float, tol: float, max_terms: int, triangle: Sequence[OperatorPoly]
) -> ExpansionResult:
    """Partial sums of sum_m p_m(x) ln(x+1)^m / m! against exp(-x*x)."""
    if not x > -1.0:
        raise DomainError("Gaussian series needs x > -1")
    _depth_check(max_terms, triangle)
    w = math.log1p(x)
    reference = math.exp(-x * x)
    acc = KahanSum()
    partials = []
    coef = 1.0
    for m in range(max_terms + 1):
        acc.add(coef * triangle[m].eval(x))
        partials.append(acc.value)
        if m >= 2 and abs(partials[-1] - reference) <= 0.45 * tol:
            break
        coef *= w / (m + 1)
    return _result(partials, reference)


def gaussian_one_term(x: float) -> float:
    """One-term Gaussian approximation 1 - x*ln(x+1), fair on 0 < x < 1."""
    if not x > -1.0:
        raise DomainError("Gaussian approximation needs x > -1")
    return 1.0 - x * math.log1p(x)


# -- summation identities of the triangle --------------------------------------

@dataclass(frozen=True)
class IdentityResidual:
    name: str
    lhs: float
    rhs: float
    residual: float


def _shifted_factorial_sum(
    x: float, shift: int, triangle: Sequence[OperatorPoly], max_terms: int
) -> float:
    acc = KahanSum()
    coef = 1.0
    small = 0
    for m in range(max_terms + 1):
        term = coef * triangle[m + shift].eval(x)
        acc.add(term)
        small = small + 1 if abs(term) <= 1e-15 * max(1.0, abs(acc.value)) else 0
        if m >= 6 and small >= 3:
            break
        coef *= 1.0 / (m + 1)
    return acc.value


def poly_sum_residuals(
    x: float, triangle: Sequence[OperatorPoly], max_terms: int = 120
) -> list[IdentityResidual]:
    """Residuals of the factorial-normalized sum identities of the triangle.

    Compares sum_m p_{m+j}(x)/m! (and the derivative sum) against their
    closed forms in exp(-x*(e-1)), plus the operator identity tying rows
    m, m+1 and m+2 through x*d/dx.
    """
    _depth_check(max_terms, triangle, need_extra=3)
    base = math.exp(-x * (_E - 1.0))
    out = []

    lhs = _shifted_factorial_sum(x, 0, triangle, max_terms)
    out.append(IdentityResidual("poly-sum", lhs, base, abs(lhs - base)))

    acc = KahanSum()
    coef = 1.0
    small = 0
    for m in range(max_terms + 1):
        term = coef * horner(triangle[m].derivative_coeffs(), x)
        acc.add(term)
        small = small + 1 if abs(term) <= 1e-15 * max(1.0, abs(acc.value)) else 0
        if m >= 6 and small >= 3:
            break
        coef *= 1.0 / (m + 1)
    rhs = -(_E - 1.0) * base
    out.append(IdentityResidual("poly-deriv-sum", acc.value, rhs, abs(acc.value - rhs)))

    closed = {
        1: -_E * x * base,
        2: (-x * _E + x * x * _E * _E) * base,
        3: _E * x * (3.0 * _E * x - 1.0 - _E * _E * x * x) * base,
    }
    for j, rhs in closed.items():
        lhs = _shifted_factorial_sum(x, j, triangle, max_terms)
        out.append(IdentityResidual(f"poly-shift{j}-sum", lhs, rhs, abs(lhs - rhs)))

    # x^2 (p_m'' - p_m') == (x - 1) p_{m+1} + p_{m+2}, scaled to avoid 1/x
    worst_lhs, worst_rhs, worst = 0.0, 0.0, -1.0
    for m in range(1, 9):
        d1 = horner(triangle[m].derivative_coeffs(), x)
        d2 = horner(triangle[m].derivative_coeffs(2), x)
        lhs = x * x * (d2 - d1)
        rhs = (x - 1.0) * triangle[m + 1].eval(x) + triangle[m + 2].eval(x)
        if abs(lhs - rhs) > worst:
            worst_lhs, worst_rhs, worst = lhs, rhs, abs(lhs - rhs)
    out.append(IdentityResidual("euler-on-weighted-deriv", worst_lhs, worst_rhs, worst))
    return out


# -- asymptotic comparison ------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRow:
    x: float
    series_value: float
    exp_estimate: float
    two_term: float
    err_simple: float
    err_two_term: float


def asymptotic_comparison(
    alpha: float,
    xs: Sequence[float],
    config: ZetaConfig | None = None,
    tol: float = 1e-12,
) -> list[ComparisonRow]:
    """Per-x errors of the one-term and two-term large-x estimates."""
    rows = []
    for x in xs:
        f = eval_direct(SeriesQuery(x, alpha, tol=tol)).value.real
        e1 = math.exp(-x)
        e2 = eval_asymptotic(x, alpha, config)
        rows.append(ComparisonRow(x, f, e1, e2, abs(f - e1), abs(f - e2)))
    return rows
