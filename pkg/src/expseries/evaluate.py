"""Evaluation routes for the exponential power sum over k of exp(-z * k**alpha).

Routes: adaptive direct summation (real or complex argument), the
polynomial-transformed double sum, the closed form at alpha = 1, the
two-term zeta asymptotic, the derivative series, the integral identities and
complex-grid evaluation for the right half plane.

The transformed route is a violently alternating double series.  Its partial
sums transiently exceed the result by the recorded cancellation factor, so
its accuracy floor in doubles is roughly eps * cancellation; tolerances far
below 1e-8 buy no extra digits there, only a larger cancellation metric.
Every report carries that metric so the loss is observable.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from scipy.integrate import quad

from .errors import ConvergenceError, DomainError
from .polynomials import OperatorPoly
from .summation import KahanSum
from .zeta import DEFAULT_CONFIG, ZetaConfig, zeta, zeta_d2, zeta_tail


@dataclass(frozen=True)
class SeriesQuery:
    """Argument, exponent parameter and truncation policy for one evaluation."""

    z: complex
    alpha: float
    tol: float = 1e-8
    k_cap: int = 500_000
    m_cap: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.k_cap < 2:
            raise DomainError("k_cap must be at least 2")
        if self.m_cap < 4:
            raise DomainError("m_cap must be at least 4")


@dataclass
class EvalReport:
    """Value plus the evidence: term count, tail bound, cancellation, method."""

    value: complex
    terms_used: int
    tail_bound: float
    cancellation: float
    method: str
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "terms_used": self.terms_used,
            "tail_bound": self.tail_bound,
            "cancellation": self.cancellation,
            "method": self.method,
            "warnings": list(self.warnings),
        }


def _cancellation(peak: float, final_abs: float) -> float:
    if final_abs == 0.0:
        return math.inf
    return max(1.0, peak / final_abs)


def _tail_bound(a: float, alpha: float, k: int, mag: Callable[[float], float]) -> float:
    """Upper bound on sum over j > k of mag(j); mag must decrease beyond k.

    For alpha >= 1 the term ratios of exp(-a*u**alpha)-type magnitudes are
    themselves decreasing, so a geometric bound from the next two terms is
    valid.  Below 1 the ratios creep toward 1 instead and the bound comes
    from left-endpoint panels over the comparison integral.
    """
    m1 = mag(k + 1.0)
    if m1 == 0.0:
        return 0.0
    if alpha >= 1.0:
        r = mag(k + 2.0) / m1
        if r < 1.0:
            return m1 / (1.0 - r)
        return math.inf
    total = m1
    u = k + 1.0
    for _ in range(200_000):
        h = max(1.0, u ** (1.0 - alpha) / (a * alpha))
        piece = h * mag(u)
        total += piece
        u += h
        if piece <= 1e-17 * total:
            return total
    return math.inf


def eval_direct(q: SeriesQuery) -> EvalReport:
    """Partial sums of exp(-z * k**alpha) with a certified stopping rule."""
    z = complex(q.z)
    a = z.real
    if a <= 0.0:
        raise DomainError("direct series needs Re(z) > 0; it diverges otherwise")
    if q.alpha <= 0.0:
        raise DomainError("direct series needs alpha > 0")
    alpha = q.alpha

    def mag(u: float) -> float:
        return math.exp(-a * u**alpha)

    acc = KahanSum(0j)
    peak = 0.0
    bound = math.inf
    next_check = 1
    for k in range(1, q.k_cap + 1):
        acc.add(cmath.exp(-z * k**alpha))
        av = abs(acc.value)
        peak = max(peak, av)
        if k == next_check:
            bound = _tail_bound(a, alpha, k, mag)
            if bound <= q.tol * av:
                return EvalReport(acc.value, k, bound, _cancellation(peak, av), "direct")
            next_check = k + 1 + k // 8
    report = EvalReport(
        acc.value,
        q.k_cap,
        bound,
        _cancellation(peak, abs(acc.value)),
        "direct",
        ["k_cap exhausted before the tail bound cleared tol"],
    )
    raise ConvergenceError("direct summation did not converge within k_cap", report)


def closed_form_alpha1(x: float) -> float:
    """exp(-x) / (1 - exp(-x)) for x > 0, evaluated stably as 1/expm1(x)."""
    if not x > 0.0:
        raise DomainError("closed form needs x > 0 (simple pole at 0)")
    return 1.0 / math.expm1(x)


_INNER_MIN_TERMS = 8


class _InnerCapError(Exception):
    def __init__(self, peak: float):
        self.peak = peak


def _poly_power_sum(
    w: float,
    x: float,
    polys: Sequence[OperatorPoly],
    tol: float,
    m_cap: int,
    shift: int,
    scale_floor: float,
) -> tuple[float, float]:
    """Kahan sum over m of w**m * p_{m+shift}(x) / m!, with guarded stopping.

    Stops at the first m past the minimum where three consecutive terms fall
    below the threshold while the smoothed term envelope (a three-term
    running maximum of |term|) is decreasing; the envelope gate prevents
    stopping inside a transient lull of the alternating terms, e.g. near a
    root of one row.  The threshold is tol * |running sum| but never below
    tol * scale_floor: deep outer terms have inner values exponentially
    smaller than their own partial sums, and chasing precision relative to
    the inner value alone would outrun any term cap without improving the
    total it feeds.  Returns the sum and the peak partial-sum magnitude.
    """
    if w == 0.0:
        v = float(polys[shift].eval(x))
        return v, abs(v)
    acc = KahanSum()
    peak = 0.0
    coef = 1.0
    history: list[float] = []
    small_run = 0
    for m in range(m_cap + 1):
        term = coef * polys[m + shift].eval(x)
        acc.add(term)
        av = abs(acc.value)
        peak = max(peak, av)
        history.append(abs(term))
        if abs(term) <= tol * max(av, scale_floor, 1e-300):
            small_run += 1
        else:
            small_run = 0
        if (
            m >= _INNER_MIN_TERMS
            and small_run >= 3
            and max(history[-3:]) < max(history[-6:-3])
        ):
            return acc.value, peak
        coef *= w / (m + 1)
    raise _InnerCapError(peak)


def _require_real_positive(q: SeriesQuery) -> float:
    z = complex(q.z)
    if z.imag != 0.0:
        raise DomainError("the polynomial routes need a real argument")
    if z.real <= 0.0:
        raise DomainError("the polynomial routes need x > 0")
    if q.alpha <= 0.0:
        raise DomainError("alpha must be positive")
    return z.real


def eval_transformed(q: SeriesQuery, triangle: Sequence[OperatorPoly]) -> EvalReport:
    """Double sum over k and m of (alpha ln k)^m p_m(x) / m!, times exp(-x).

    The outer sum stops by the same analytic tail bound as the direct route,
    applied to the analytically equivalent terms exp(-x * k**alpha).
    """
    x = _require_real_positive(q)
    if len(triangle) - 1 < q.m_cap:
        raise DomainError(f"triangle depth {len(triangle) - 1} < m_cap {q.m_cap}")
    alpha = q.alpha
    damp = math.exp(-x)

    def mag(u: float) -> float:
        return math.exp(-x * u**alpha)

    outer = KahanSum()
    peak = 0.0
    bound = math.inf
    for k in range(1, q.k_cap + 1):
        w = alpha * math.log(k)
        floor = 0.01 * abs(outer.value)
        try:
            inner, inner_peak = _poly_power_sum(w, x, triangle, q.tol, q.m_cap, 0, floor)
        except _InnerCapError as exc:
            value = damp * outer.value
            cancel = _cancellation(damp * max(peak, exc.peak), abs(value))
            report = EvalReport(
                value,
                k - 1,
                bound,
                cancel,
                "transformed",
                [
                    f"inner sum hit m_cap={q.m_cap} at k={k}",
                    f"cancellation {cancel:.3e} limits attainable accuracy",
                ],
            )
            raise ConvergenceError(
                "transformed inner sum did not converge within m_cap", report
            ) from None
        outer.add(inner)
        peak = max(peak, inner_peak, abs(outer.value))
        bound = _tail_bound(x, alpha, k, mag)
        value = damp * outer.value
        if bound <= q.tol * abs(value):
            cancel = _cancellation(damp * peak, abs(value))
            warnings = []
            if cancel * 2.3e-16 > q.tol:
                warnings.append(
                    f"cancellation {cancel:.3e}: accuracy floor "
                    f"~{cancel * 2.3e-16:.1e} exceeds tol"
                )
            return EvalReport(value, k, bound, cancel, "transformed", warnings)
    value = damp * outer.value
    report = EvalReport(
        value,
        q.k_cap,
        bound,
        _cancellation(damp * peak, abs(value)),
        "transformed",
        ["k_cap exhausted before the tail bound cleared tol"],
    )
    raise ConvergenceError("transformed summation did not converge within k_cap", report)


def eval_derivative(q: SeriesQuery, triangle: Sequence[OperatorPoly]) -> EvalReport:
    """d/dx of the sum, via the shifted polynomial double series."""
    x = _require_real_positive(q)
    if len(triangle) - 2 < q.m_cap:
        raise DomainError(
            f"triangle depth {len(triangle) - 1} < m_cap + 1 = {q.m_cap + 1}"
        )
    alpha = q.alpha
    damp = math.exp(-x)

    def mag(u: float) -> float:
        # |d/dx term| = k**alpha * exp(-x k**alpha); decreasing once x*u**alpha > 1
        return u**alpha * math.exp(-x * u**alpha)

    k_dec = int((1.0 / x) ** (1.0 / alpha)) + 1
    outer = KahanSum()
    peak = 0.0
    bound = math.inf
    for k in range(1, q.k_cap + 1):
        w = alpha * math.log(k)
        floor = 0.01 * abs(outer.value)
        try:
            inner, inner_peak = _poly_power_sum(w, x, triangle, q.tol, q.m_cap, 1, floor)
        except _InnerCapError as exc:
            value = damp / x * outer.value
            cancel = _cancellation(damp / x * max(peak, exc.peak), abs(value))
            report = EvalReport(
                value,
                k - 1,
                bound,
                cancel,
                "transformed",
                [
                    f"inner sum hit m_cap={q.m_cap} at k={k}",
                    f"cancellation {cancel:.3e} limits attainable accuracy",
                ],
            )
            raise ConvergenceError(
                "derivative inner sum did not converge within m_cap", report
            ) from None
        outer.add(inner)
        peak = max(peak, inner_peak, abs(outer.value))
        value = damp / x * outer.value
        if k >= k_dec:
            bound = _tail_bound(x, alpha, k, mag)
            if bound <= q.tol * abs(value):
                cancel = _cancellation(damp / x * peak, abs(value))
                return EvalReport(value, k, bound, cancel, "transformed")
    value = damp / x * outer.value
    report = EvalReport(
        value,
        q.k_cap,
        bound,
        _cancellation(damp / x * peak, abs(value)),
        "transformed",
        ["k_cap exhausted before the tail bound cleared tol"],
    )
    raise ConvergenceError("derivative summation did not converge within k_cap", report)


def eval_asymptotic(x: float, alpha: float, config: ZetaConfig | None = None) -> float:
    """Two-term large-x estimate exp(-x)*zeta(x*alpha) - exp(-x)*x/2*zeta''(x*alpha)."""
    cfg = config or DEFAULT_CONFIG
    s = x * alpha
    if not s > 1.0 + cfg.delta:
        raise DomainError(
            f"asymptotic form needs x*alpha > {1.0 + cfg.delta:g}, got {s:g}"
        )
    return math.exp(-x) * (zeta(s, cfg) - 0.5 * x * zeta_d2(s, cfg))


# -- integral identities ------------------------------------------------------

def weighted_exp_sum(x: float, alpha: float, tol: float = 1e-12, k_cap: int = 500_000) -> float:
    """Sum over k of exp(-x * k**alpha) / k**alpha."""
    if x <= 0.0 or alpha <= 0.0:
        raise DomainError("weighted sum needs x > 0 and alpha > 0")

    def mag(u: float) -> float:
        return math.exp(-x * u**alpha)

    acc = KahanSum()
    for k in range(1, k_cap + 1):
        acc.add(math.exp(-x * k**alpha) / k**alpha)
        # the plain exponential tail majorizes the weighted one
        bound = _tail_bound(x, alpha, k, mag) * (k + 1.0) ** -alpha
        if bound <= tol * abs(acc.value):
            return acc.value
    raise ConvergenceError("weighted sum did not converge within k_cap")


_SINGULAR_SPLIT = 1e-3


def _termwise_integral(x: float, alpha: float, cfg: ZetaConfig) -> float:
    """Exact-in-k form of the integral of the sum from 0 to x.

    Integrating term by term gives sum of (1 - exp(-x k**alpha)) / k**alpha;
    the high-k remainder is a pure zeta tail once the exponential underflows.
    """
    cutoff = max(64, int((45.0 / x) ** (1.0 / alpha)) + 1)
    head = math.fsum(
        -math.expm1(-x * k**alpha) / k**alpha for k in range(1, cutoff + 1)
    )
    return head + zeta_tail(alpha, cutoff)


def integral_to(
    x: float, alpha: float, config: ZetaConfig | None = None, quad_tol: float = 1e-11
) -> float:
    """Integral of the sum over (0, x].

    The integrand blows up toward 0, so (0, x0] is integrated term-wise in
    closed form and only [x0, x] goes to adaptive quadrature.
    """
    cfg = config or DEFAULT_CONFIG
    if not alpha > 1.0 + cfg.delta:
        raise DomainError(f"integral identities need alpha > {1.0 + cfg.delta:g}")
    if not x > 0.0:
        raise DomainError("upper limit must be positive")
    x0 = _SINGULAR_SPLIT
    if x <= x0:
        return _termwise_integral(x, alpha, cfg)
    head = _termwise_integral(x0, alpha, cfg)

    def f(t: float) -> float:
        return eval_direct(SeriesQuery(t, alpha, tol=1e-12)).value.real

    body, _ = quad(f, x0, x, epsabs=quad_tol, epsrel=quad_tol, limit=300)
    return head + body


def integral_residual(x: float, alpha: float, config: ZetaConfig | None = None) -> float:
    """|quadrature integral - (zeta(alpha) - weighted sum at x)|."""
    cfg = config or DEFAULT_CONFIG
    lhs = integral_to(x, alpha, cfg)
    rhs = zeta(alpha, cfg) - weighted_exp_sum(x, alpha)
    return abs(lhs - rhs)


def total_integral(alpha: float, config: ZetaConfig | None = None, upper: float = 40.0) -> float:
    """Integral of the sum over (0, inf); analytically equal to zeta(alpha)."""
    cfg = config or DEFAULT_CONFIG
    return integral_to(upper, alpha, cfg) + weighted_exp_sum(upper, alpha)


# -- complex grids ------------------------------------------------------------

@dataclass(frozen=True)
class ComplexGrid:
    """Values over a rectangle; invalid points are holes (None), not failures."""

    re_values: tuple[float, ...]
    im_values: tuple[float, ...]
    values: tuple[tuple[complex | None, ...], ...]
    alpha: float


def _linspace(lo: float, hi: float, n: int) -> tuple[float, ...]:
    if n < 2:
        raise DomainError("a grid needs at least 2 steps per axis")
    h = (hi - lo) / (n - 1)
    return tuple(lo + i * h for i in range(n))


def complex_grid(
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    steps: int,
    alpha: float,
    tol: float = 1e-10,
    k_cap: int = 500_000,
) -> ComplexGrid:
    """Direct evaluation on a steps-by-steps rectangle in the complex plane."""
    res = _linspace(re_range[0], re_range[1], steps)
    ims = _linspace(im_range[0], im_range[1], steps)
    rows = []
    for re in res:
        row: list[complex | None] = []
        for im in ims:
            try:
                row.append(
                    eval_direct(SeriesQuery(complex(re, im), alpha, tol, k_cap)).value
                )
            except DomainError:
                row.append(None)
        rows.append(tuple(row))
    return ComplexGrid(res, ims, tuple(rows), alpha)
