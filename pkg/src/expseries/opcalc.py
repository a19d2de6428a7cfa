"""Cauchy-Euler operator calculus on truncated power series.

Powers of x*d/dx, the dilation exp(beta*x*d/dx), trigonometric and general
operator functions, the inverse-power integral operator and the formal zeta
operator all act diagonally on coefficients, so every operation here is a
single O(N) coefficient map over an immutable series.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .polynomials import OperatorPoly
from .zeta import DEFAULT_CONFIG, ZetaConfig, zeta


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series around 0 cut at fixed order: coeffs[n] multiplies x**n.

    ``truncated`` records that some operation dropped nonzero coefficients
    past a cap, so tests can refuse to trust the high end of a chain.
    """

    coeffs: tuple
    truncated: bool = False

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if not cs:
            raise DomainError("a series needs at least the constant term")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class LaurentNegSeries:
    """Pure negative powers: coeffs[j-1] multiplies x**(-j), j >= 1."""

    coeffs: tuple


def _expn(beta, n: int):
    # exp(beta * n), staying real for real beta so real series stay real
    if isinstance(beta, complex):
        return cmath.exp(beta * n)
    return math.exp(beta * n)


def euler_pow(m: int, s: TruncatedSeries) -> TruncatedSeries:
    """(x d/dx)^m: multiplies coefficient n by n**m, with 0**0 = 1."""
    if m < 0:
        raise DomainError("operator power must be nonnegative")
    return TruncatedSeries(tuple(c * n**m for n, c in enumerate(s.coeffs)), s.truncated)


def euler_exp(beta, s: TruncatedSeries) -> TruncatedSeries:
    """exp(beta * x d/dx): the dilation A(x) -> A(x * exp(beta))."""
    return TruncatedSeries(
        tuple(c * _expn(beta, n) for n, c in enumerate(s.coeffs)), s.truncated
    )


def euler_trig(kind: str, beta: float, s: TruncatedSeries) -> TruncatedSeries:
    """cos or sin of beta * x d/dx: multiplies coefficient n by cos/sin(beta*n)."""
    if kind == "cos":
        f = math.cos
    elif kind == "sin":
        f = math.sin
    else:
        raise DomainError(f"kind must be 'cos' or 'sin', got {kind!r}")
    return TruncatedSeries(
        tuple(c * f(beta * n) for n, c in enumerate(s.coeffs)), s.truncated
    )


def euler_opfunc(weights, beta, s: TruncatedSeries) -> TruncatedSeries:
    """Operator polynomial sum over n of weights[n] * A(x * exp(n*beta)).

    Only finite weight sequences are accepted; callers approximating an
    infinite operator series choose the truncation themselves.
    """
    out = []
    for j, c in enumerate(s.coeffs):
        g = sum(b * _expn(beta, n * j) for n, b in enumerate(weights))
        out.append(c * g)
    return TruncatedSeries(tuple(out), s.truncated)


def euler_int(m: int, beta, s: TruncatedSeries) -> TruncatedSeries:
    """(beta * integral dx/x)^m: maps coefficient n to beta**m / n**m times it.

    The constant term must vanish; integrating it would produce a logarithm
    that the representation cannot hold.  Integration constants are fixed
    to zero.
    """
    if m < 0:
        raise DomainError("operator power must be nonnegative")
    if s.coeffs[0] != 0:
        raise DomainError("constant term must vanish (log term otherwise)")
    out = [s.coeffs[0] * 0]
    for n, c in enumerate(s.coeffs):
        if n == 0:
            continue
        out.append(c * beta**m / n**m)
    return TruncatedSeries(tuple(out), s.truncated)


def zeta_op(alpha: float, phi: LaurentNegSeries, config: ZetaConfig | None = None) -> LaurentNegSeries:
    """Formal zeta of -alpha * x d/dx on negative powers: eigenvalue zeta(alpha*j).

    Every populated power must sit in the convergence region alpha*j > 1 + delta.
    """
    cfg = config or DEFAULT_CONFIG
    out = []
    for j, c in enumerate(phi.coeffs, start=1):
        if c == 0:
            out.append(c)
            continue
        arg = alpha * j
        if not arg > 1.0 + cfg.delta:
            raise DomainError(
                f"zeta operator outside its convergence domain at power j={j}: "
                f"alpha*j={arg:g} <= {1.0 + cfg.delta:g}"
            )
        out.append(c * zeta(arg, cfg))
    return LaurentNegSeries(tuple(out))


def derivative(s: TruncatedSeries) -> TruncatedSeries:
    """Termwise d/dx; the order drops by one (constants map to the zero series)."""
    if len(s.coeffs) == 1:
        return TruncatedSeries((s.coeffs[0] * 0,), s.truncated)
    return TruncatedSeries(
        tuple(n * c for n, c in enumerate(s.coeffs))[1:], s.truncated
    )


def mul_x(s: TruncatedSeries, cap: int | None = None) -> TruncatedSeries:
    """Multiply by x; with a cap the order is clamped and overflow flagged."""
    out = (s.coeffs[0] * 0, *s.coeffs)
    dropped = False
    if cap is not None and len(out) - 1 > cap:
        dropped = any(c != 0 for c in out[cap + 1 :])
        out = out[: cap + 1]
    return TruncatedSeries(out, s.truncated or dropped)


# -- series constructors used by checks and callers --------------------------

def exp_series(order: int, rate: float = -1.0) -> TruncatedSeries:
    """Truncation of exp(rate * x)."""
    return TruncatedSeries(tuple(rate**n / math.factorial(n) for n in range(order + 1)))


def geometric_series(order: int, ratio: float) -> TruncatedSeries:
    """Truncation of 1 / (1 - ratio * x)."""
    return TruncatedSeries(tuple(ratio**n for n in range(order + 1)))


def exp_poly_series(p: OperatorPoly, order: int, scale: float = 1.0) -> TruncatedSeries:
    """Truncation of exp(-scale*x) * p(scale*x), built by direct convolution."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    expc = [(-scale) ** n / math.factorial(n) for n in range(order + 1)]
    out = [0.0] * (order + 1)
    for k, c in enumerate(p.coeffs):
        if k > order:
            break
        ck = float(c) * scale**k
        for n in range(k, order + 1):
            out[n] += ck * expc[n - k]
    return TruncatedSeries(tuple(out))
