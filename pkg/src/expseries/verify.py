"""Named invariant suites behind the ``verify`` CLI command.

Each suite returns CheckResult rows; exact checks report residual 0.0 on
success, floating checks report the measured worst residual so regressions
are visible even while passing.
"""

import cmath
import math
from dataclasses import dataclass

from . import evaluate, expansions, opcalc, polynomials
from .errors import DomainError
from .evaluate import SeriesQuery
from .zeta import zeta, zeta_tail

SUITES = ("poly", "operator", "series", "funcseries")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    residual: float
    detail: str = ""


def _check(suite, name, passed, residual=0.0, detail=""):
    return CheckResult(suite, name, bool(passed), float(residual), detail)


def poly_suite(max_m: int = 60, identity_m: int = 40) -> list[CheckResult]:
    out = []
    rows = polynomials.triangle(max_m)
    table = polynomials.StirlingTable.build(max_m)

    explicit_ok = all(polynomials.poly_explicit(m) == rows[m] for m in range(max_m + 1))
    stirling_ok = all(
        polynomials.poly_from_stirling(m, table) == rows[m] for m in range(max_m + 1)
    )
    rec_ok = all(
        polynomials.poly_from_coeff_recursion(m) == rows[m] for m in range(max_m + 1)
    )
    out.append(_check("poly", "four-way-equivalence", explicit_ok and stirling_ok and rec_ok,
                      detail=f"m <= {max_m}, exact"))

    inv_ok = True
    for m in range(1, max_m + 1):
        c = rows[m].coeffs
        inv_ok &= c[0] == 0 and c[1] == -1 and c[m] == (-1) ** m
        if m >= 2:
            inv_ok &= c[2] == 2 ** (m - 1) - 1
        inv_ok &= all(
            (c[k] > 0) == (k % 2 == 0) for k in range(1, m + 1) if c[k] != 0
        )
    out.append(_check("poly", "row-invariants", inv_ok, detail=f"m <= {max_m}"))

    weighted_ok = all(
        polynomials.exp_weighted_integral(m) == (-1) ** m for m in range(max_m + 1)
    )
    out.append(_check("poly", "weighted-integral", weighted_ok, detail=f"m <= {max_m}, exact"))

    diag_ok = True
    for m in range(1, 13):
        for n in range(1, m + 2):
            diag_ok &= polynomials.diagonal_high(n, m) == rows[m].coeffs[m - n + 1]
        for n in range(0, m):
            diag_ok &= polynomials.diagonal_low(n, m) == rows[m].coeffs[n + 1]
    out.append(_check("poly", "diagonals", diag_ok, detail="m <= 12, exact"))

    idents = polynomials.verify_identities(identity_m)
    for name in sorted({c.identity for c in idents}):
        ok = all(c.passed for c in idents if c.identity == name)
        out.append(_check("poly", name, ok, detail=f"indices <= {identity_m}, exact"))
    return out


def operator_suite() -> list[CheckResult]:
    out = []
    s = opcalc.TruncatedSeries(tuple((-0.7) ** n / (n + 1) for n in range(13)))

    worst = 0.0
    for b1, b2 in ((0.3, -0.9), (1.1, 0.4), (-0.2, -0.5)):
        once = opcalc.euler_exp(b1, opcalc.euler_exp(b2, s))
        both = opcalc.euler_exp(b1 + b2, s)
        worst = max(worst, _series_dist(once, both))
    out.append(_check("operator", "dilation-composition", worst <= 1e-12, worst))

    worst = 0.0
    for b in (0.25, 1.5, -0.8):
        rt = opcalc.euler_exp(-b, opcalc.euler_exp(b, s))
        worst = max(worst, _series_dist(rt, s))
    out.append(_check("operator", "dilation-inverse", worst <= 1e-12, worst))

    dx_x = lambda t: opcalc.derivative(opcalc.mul_x(t))
    x_dx = lambda t: opcalc.mul_x(opcalc.derivative(t))
    lhs = _series_sub(dx_x(s), x_dx(s))
    worst = _series_dist(lhs, s)
    out.append(_check("operator", "commutator-identity", worst <= 1e-12, worst))
    comm = _series_sub(x_dx(dx_x(s)), dx_x(x_dx(s)))
    worst = max(abs(c) for c in comm.coeffs)
    out.append(_check("operator", "commutator-zero", worst <= 1e-12, worst))

    worst = 0.0
    dilated = opcalc.euler_exp(math.log(2.0), opcalc.exp_series(12))
    direct = opcalc.exp_series(12, rate=-2.0)
    worst = max(worst, _series_dist(dilated, direct, rel=True))
    dilated = opcalc.euler_exp(math.log(2.0), opcalc.geometric_series(12, 0.5))
    direct = opcalc.geometric_series(12, 1.0)
    worst = max(worst, _series_dist(dilated, direct, rel=True))
    out.append(_check("operator", "dilation-semantics", worst <= 1e-10, worst))

    worst = 0.0
    for m in range(0, 6):
        for j in range(0, 11 - m):
            base = opcalc.exp_poly_series(polynomials.poly_explicit(m), 24)
            lifted = opcalc.euler_pow(j, base)
            target = opcalc.exp_poly_series(polynomials.poly_explicit(m + j), 24)
            worst = max(worst, _series_dist(lifted, target, rel=True))
    out.append(_check("operator", "power-shifts-rows", worst <= 1e-9, worst))

    worst = 0.0
    beta = 0.3
    scale = math.exp(-beta)
    for m in range(0, 9):
        p = polynomials.poly_explicit(m)
        moved = opcalc.euler_exp(-beta, opcalc.exp_poly_series(p, 24))
        direct = opcalc.exp_poly_series(p, 24, scale=scale)
        worst = max(worst, _series_dist(moved, direct, rel=True))
    out.append(_check("operator", "dilation-scales-rows", worst <= 1e-9, worst))

    lifted = opcalc.zeta_op(2.0, opcalc.LaurentNegSeries((1.0,)))
    oracle = _zeta_oracle(2.0)
    resid = abs(lifted.coeffs[0] - oracle) / oracle
    out.append(_check("operator", "zeta-eigenvalue", resid <= 1e-12, resid))
    return out


def series_suite() -> list[CheckResult]:
    out = []

    worst = 0.0
    for z in (complex(0.7, 0.9), complex(1.4, -0.3), complex(0.25, 1.7)):
        for alpha in (1.0, 2.8):
            f = evaluate.eval_direct(SeriesQuery(z, alpha, tol=1e-11)).value
            fc = evaluate.eval_direct(SeriesQuery(z.conjugate(), alpha, tol=1e-11)).value
            worst = max(worst, abs(fc - f.conjugate()) / abs(f))
    out.append(_check("series", "conjugate-symmetry", worst <= 1e-13, worst))

    mono_ok = True
    for x in (0.5, 1.0, 2.0):
        vals = [
            evaluate.eval_direct(SeriesQuery(x, a, tol=1e-11)).value.real
            for a in (0.5, 1.0, 1.6, 2.0, 2.8)
        ]
        mono_ok &= all(v1 > v2 for v1, v2 in zip(vals, vals[1:]))
        mono_ok &= all(v > math.exp(-x) for v in vals)
    out.append(_check("series", "alpha-monotone-and-squeeze", mono_ok))

    limit = abs(
        evaluate.eval_direct(SeriesQuery(1.0, 50.0, tol=1e-14)).value.real
        - math.exp(-1.0)
    )
    out.append(_check("series", "alpha-limit", limit <= 1e-16, limit))

    worst = 0.0
    tri = polynomials.default_triangle(200)
    for x in (0.5, 1.0, 2.0, 3.0):
        q = SeriesQuery(x, 1.0, tol=1e-7)
        rep = evaluate.eval_transformed(q, tri)
        closed = evaluate.closed_form_alpha1(x)
        allowed = max(1e-6, q.tol * rep.cancellation)
        worst = max(worst, abs(rep.value.real - closed) / allowed)
    out.append(_check("series", "cross-method-alpha1", worst <= 1.0, worst,
                      detail="scaled by allowed tolerance"))

    worst = 0.0
    for x, alpha in ((1.0, 2.0), (2.0, 1.5)):
        worst = max(worst, evaluate.integral_residual(x, alpha))
    out.append(_check("series", "integral-identity", worst <= 1e-6, worst))

    worst = 0.0
    for alpha in (1.5, 2.0, 3.0):
        total = evaluate.total_integral(alpha)
        worst = max(worst, abs(total - zeta(alpha)) / zeta(alpha))
    out.append(_check("series", "integral-over-all", worst <= 1e-6, worst))
    return out


def funcseries_suite() -> list[CheckResult]:
    out = []
    tri = polynomials.default_triangle(200)

    worst = 0.0
    for x in (0.0, 0.5, 1.0, 2.0, 4.0):
        for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
            worst = max(worst, expansions.gf_eval(x, t, 120, tri).residual)
    out.append(_check("funcseries", "generating-function", worst <= 1e-9, worst))

    worst = 0.0
    swap_worst = 0.0
    for x in (0.0, 0.5, 1.0, 1.5, 2.0):
        for y in (0.0, 0.5, 1.0, 1.5, 2.0):
            a = expansions.symmetric_gf_eval(x, y, 160, tri)
            b = expansions.symmetric_gf_eval(y, x, 160, tri)
            worst = max(worst, a.residual, b.residual)
            swap_worst = max(swap_worst, abs(a.final - b.final))
    ok = worst <= 1e-8 and swap_worst <= 2e-8
    out.append(_check("funcseries", "symmetric-gf-swap", ok, max(worst, swap_worst)))

    worst = 0.0
    pyth = 0.0
    for i in range(25):
        x = i * (math.pi / 2 - 0.05) / 24
        s = expansions.sin_series(x, 1e-8, tri)
        c = expansions.cos_series(x, 1e-8, tri)
        worst = max(worst, s.residual, c.residual)
        pyth = max(pyth, abs(s.final**2 + c.final**2 - 1.0))
    ok = worst <= 1e-8 and pyth <= 2e-8
    out.append(_check("funcseries", "trig-series", ok, max(worst, pyth)))

    worst = 0.0
    for x in (0.0, 0.3, 0.6, 0.9):
        worst = max(worst, expansions.gaussian_series(x, 1e-6, 200, tri).residual)
    out.append(_check("funcseries", "gaussian-series", worst <= 1e-6, worst))

    worst = 0.0
    for x in (0.0, 0.5, 1.0, 2.0):
        for entry in expansions.poly_sum_residuals(x, tri):
            worst = max(worst, entry.residual)
    out.append(_check("funcseries", "factorial-sum-identities", worst <= 1e-8, worst))

    rows = expansions.asymptotic_comparison(1.6, (2.0, 3.0, 4.0, 5.0, 6.0))
    wins = sum(1 for r in rows if r.err_simple < r.err_two_term)
    out.append(_check("funcseries", "simple-estimate-wins", wins >= 4, float(5 - wins),
                      detail=f"{wins}/5 points"))
    return out


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for suite in SUITES:
            results.extend(run_suite(suite))
        return results
    table = {
        "poly": poly_suite,
        "operator": operator_suite,
        "series": series_suite,
        "funcseries": funcseries_suite,
    }
    if name not in table:
        raise DomainError(f"unknown suite {name!r}; pick from {SUITES + ('all',)}")
    return table[name]()


# -- helpers -------------------------------------------------------------------

def _series_sub(a, b):
    n = min(len(a.coeffs), len(b.coeffs))
    return opcalc.TruncatedSeries(
        tuple(a.coeffs[i] - b.coeffs[i] for i in range(n)),
        a.truncated or b.truncated,
    )


def _series_dist(a, b, rel: bool = False) -> float:
    n = min(len(a.coeffs), len(b.coeffs))
    worst = 0.0
    for i in range(n):
        d = abs(a.coeffs[i] - b.coeffs[i])
        if rel:
            scale = max(abs(a.coeffs[i]), abs(b.coeffs[i]), 1e-300)
            d /= scale
        worst = max(worst, d)
    return worst


def _zeta_oracle(s: float, cutoff: int = 200_000) -> float:
    # Independent of zeta(): plain partial sum plus integral and half-term.
    head = math.fsum(k**-s for k in range(1, cutoff + 1))
    return head + cutoff ** (1.0 - s) / (s - 1.0) - 0.5 * cutoff**-s
