"""Exact machinery for the operator polynomial triangle.

The family p_0, p_1, p_2, ... is defined by applying powers of the
Cauchy-Euler operator x*d/dx to exp(-x) and stripping the exponential:

    exp(x) * (x d/dx)^m exp(-x) = p_m(x)

Row m is a degree-m polynomial with integer coefficients; up to an
alternating sign the coefficients are Stirling numbers of the second kind,
and that identification is certified (not assumed) by the test suite.  The
first rows:

    p_0 = 1
    p_1 = -x
    p_2 = x^2 - x
    p_3 = -x^3 + 3x^2 - x
    p_4 = x^4 - 6x^3 + 7x^2 - x

Everything here runs in exact arbitrary-precision integer arithmetic;
floating point enters only when a polynomial is evaluated at a non-integer
point.  Four independent construction routes are provided (a binomial sum
recursion, the explicit closed form, the signed-Stirling identification and
a coefficient recursion) so that each can certify the others.

Coefficients are stored lowest power first with an explicit zero constant
term for m >= 1, which index-aligns ``coeffs[k]`` with the signed Stirling
number of power k.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DomainError


def horner(coeffs: Sequence, x):
    """Evaluate sum of coeffs[k] * x**k, highest power first.

    The evaluation order is fixed so results are bit-reproducible.  Integer
    coefficients at an integer point stay exact.
    """
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class StirlingTable:
    """Triangle of Stirling numbers of the second kind, exact integers."""

    max_n: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, max_n: int) -> "StirlingTable":
        if max_n < 0:
            raise DomainError("StirlingTable size must be nonnegative")
        rows = [(1,)]
        for n in range(1, max_n + 1):
            prev = rows[-1]
            row = [0] * (n + 1)
            for m in range(1, n + 1):
                above = prev[m] if m < n else 0
                row[m] = m * above + prev[m - 1]
            rows.append(tuple(row))
        return cls(max_n, tuple(rows))

    def value(self, n: int, m: int) -> int:
        if n < 0 or m < 0:
            raise DomainError(f"Stirling indices must be nonnegative, got ({n}, {m})")
        if m > n:
            raise DomainError(f"Stirling number undefined for m > n, got ({n}, {m})")
        if n > self.max_n:
            raise DomainError(f"table holds n <= {self.max_n}, got n={n}")
        return self.rows[n][m]


@lru_cache(maxsize=8)
def _cached_table(max_n: int) -> StirlingTable:
    return StirlingTable.build(max_n)


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind via the standard recursion."""
    if n < 0 or m < 0:
        raise DomainError(f"Stirling indices must be nonnegative, got ({n}, {m})")
    if m > n:
        raise DomainError(f"Stirling number undefined for m > n, got ({n}, {m})")
    # Bucket the cache size so repeated mixed-n calls reuse one table.
    size = max(16, 1 << n.bit_length())
    return _cached_table(size).value(n, m)


@dataclass(frozen=True)
class OperatorPoly:
    """One row of the triangle; ``coeffs[k]`` multiplies x**k, exact ints."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.m < 0 or len(self.coeffs) != self.m + 1:
            raise DomainError("coefficient vector must have length m + 1")

    def eval(self, x):
        return horner(self.coeffs, x)

    def eval_abs(self, x):
        """Evaluate with absolute coefficients at |x|: a majorant of |eval|."""
        return horner([abs(c) for c in self.coeffs], abs(x))

    def derivative_coeffs(self, order: int = 1) -> tuple[int, ...]:
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(k * c for k, c in enumerate(cs))[1:] or (0,)
        return cs

    def eval_deriv(self, x, order: int = 1):
        return horner(self.derivative_coeffs(order), x)


def poly_eval(p: OperatorPoly, x):
    """Horner evaluation of a triangle row at x (real or complex)."""
    return p.eval(x)


def triangle(max_index: int) -> tuple[OperatorPoly, ...]:
    """Rows 0..max_index generated by the binomial sum recursion.

    Each new row is p_{j+1}(x) = -x * sum_n binom(j, n) * p_{j-n}(x); this is
    the cheapest exact generator and the package default.
    """
    if max_index < 0:
        raise DomainError("triangle size must be nonnegative")
    rows = [(1,)]
    for j in range(max_index):
        acc = [0] * (j + 1)
        for n in range(j + 1):
            b = math.comb(j, n)
            for k, c in enumerate(rows[j - n]):
                acc[k] += b * c
        rows.append((0, *(-c for c in acc)))
    return tuple(OperatorPoly(m, row) for m, row in enumerate(rows))


@lru_cache(maxsize=4)
def default_triangle(depth: int) -> tuple[OperatorPoly, ...]:
    """Cached triangle for callers that only need some depth."""
    return triangle(depth)


def _coeff_closed_form(m: int, p: int) -> int:
    # Coefficient of x**p in row m: alternating binomial sum over i of
    # (-1)^i * C(p, i) * i^m, divided (exactly) by p!.
    num = sum((-1) ** i * math.comb(p, i) * i**m for i in range(p + 1))
    q, r = divmod(num, math.factorial(p))
    if r:
        raise ArithmeticError(f"closed form not integral at (m={m}, p={p})")
    return q


def poly_explicit(m: int) -> OperatorPoly:
    """Row m from the explicit closed form, no recursion on earlier rows."""
    if m < 0:
        raise DomainError("polynomial index must be nonnegative")
    if m == 0:
        return OperatorPoly(0, (1,))
    return OperatorPoly(m, tuple(_coeff_closed_form(m, p) for p in range(m + 1)))


def poly_from_stirling(m: int, table: StirlingTable) -> OperatorPoly:
    """Row m as signed Stirling numbers: coeffs[k] = (-1)^k * S(m, k)."""
    if m < 0:
        raise DomainError("polynomial index must be nonnegative")
    if table.max_n < m:
        raise DomainError(f"table holds n <= {table.max_n}, need {m}")
    if m == 0:
        return OperatorPoly(0, (1,))
    coeffs = [0] * (m + 1)
    for k in range(1, m + 1):
        coeffs[k] = (-1) ** k * table.value(m, k)
    return OperatorPoly(m, tuple(coeffs))


def poly_from_coeff_recursion(m: int) -> OperatorPoly:
    """Row m via the two-term recursion on coefficients ordered from the top.

    With c_j the coefficient of x^(m-j+1), the recursion is
    c_j(m) = c_{j-1}(m-1) * (m-j+1) - c_j(m-1), seeded by c_1(1) = -1.
    """
    if m < 0:
        raise DomainError("polynomial index must be nonnegative")
    if m == 0:
        return OperatorPoly(0, (1,))
    row = [-1]
    for n in range(2, m + 1):
        prev = row
        row = []
        for j in range(1, n + 1):
            left = prev[j - 2] if 2 <= j <= n else 0
            mid = prev[j - 1] if j <= n - 1 else 0
            row.append(left * (n - j + 1) - mid)
    coeffs = [0] * (m + 1)
    for j, c in enumerate(row, start=1):
        coeffs[m - j + 1] = c
    return OperatorPoly(m, tuple(coeffs))


def poly_next(p: OperatorPoly) -> OperatorPoly:
    """Next row via the derivative recursion p_{m+1} = x * (p_m' - p_m)."""
    c = p.coeffs
    out = [0] * (p.m + 2)
    for j in range(1, p.m + 2):
        cj = c[j] if j <= p.m else 0
        out[j] = j * cj - c[j - 1]
    return OperatorPoly(p.m + 1, tuple(out))


def diagonal_high(n: int, m: int) -> int:
    """n-th highest-power diagonal of row m: coefficient of x**(m-n+1)."""
    if not 1 <= n <= m + 1:
        raise DomainError(f"high diagonal needs 1 <= n <= m+1, got (n={n}, m={m})")
    return _coeff_closed_form(m, m - n + 1)


def diagonal_low(n: int, m: int) -> int:
    """n-th lowest-power diagonal of row m: coefficient of x**(n+1)."""
    if not 0 <= n <= m - 1:
        raise DomainError(f"low diagonal needs 0 <= n <= m-1, got (n={n}, m={m})")
    return _coeff_closed_form(m, n + 1)


def exp_weighted_integral(m: int) -> int:
    """Integral of exp(-x) * p_m(x) over [0, inf), exactly.

    Each monomial contributes a factorial moment, so the value is
    sum of coeffs[k] * k!; it comes out as (-1)**m for every m.
    """
    if m < 0:
        raise DomainError("polynomial index must be nonnegative")
    p = poly_explicit(m)
    return sum(c * math.factorial(k) for k, c in enumerate(p.coeffs))


def iter_triangle_rows(max_index: int) -> Iterator[tuple[int, int, str]]:
    """Triangle export: (m, power, coefficient-as-decimal-string) triples.

    Strings because deep rows overflow every fixed-width integer type.
    """
    for p in triangle(max_index):
        for power, c in enumerate(p.coeffs):
            yield p.m, power, str(c)


# -- exact identity certification -------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    index: int
    passed: bool


def _padd(a, b):
    n = max(len(a), len(b))
    return tuple(
        (a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)
    )


def _pscale(a, s):
    return tuple(s * c for c in a)


def _pderiv(a):
    return tuple(k * c for k, c in enumerate(a))[1:] or (0,)


def _pmulx(a):
    return (0, *a)


def _ptrim(a):
    n = len(a)
    while n > 1 and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def _peq(a, b):
    return _ptrim(a) == _ptrim(b)


def verify_identities(max_index: int) -> list[IdentityCheck]:
    """Certify the classical identities of the triangle, exactly.

    Each check compares integer coefficient vectors after symbolic
    manipulation (differentiating candidate antiderivatives and cancelling
    the common exp(-x) factor), so a pass is a proof at that index, not a
    tolerance statement.  Failures are reported, never raised.
    """
    if max_index < 2:
        raise DomainError("need at least two rows to check anything")
    rows = [p.coeffs for p in triangle(max_index + 2)]
    checks: list[IdentityCheck] = []

    # Binomial derivative sum: sum_n C(j,n) p_{j-n} == p_j - p_j'.
    for j in range(max_index + 1):
        lhs = (0,)
        for n in range(j + 1):
            lhs = _padd(lhs, _pscale(rows[j - n], math.comb(j, n)))
        rhs = _padd(rows[j], _pscale(_pderiv(rows[j]), -1))
        checks.append(IdentityCheck("binomial-derivative-sum", j, _peq(lhs, rhs)))

    # Telescoping sum: sum_{j<m} (-1)^(j+1) (p_j + p_{j+1}) == -1 + (-1)^m p_m.
    for m in range(1, max_index + 1):
        acc = (0,)
        for j in range(m):
            acc = _padd(acc, _pscale(_padd(rows[j], rows[j + 1]), (-1) ** (j + 1)))
        rhs = _padd((-1,), _pscale(rows[m], (-1) ** m))
        checks.append(IdentityCheck("telescoping-sum", m, _peq(acc, rhs)))

    # Antiderivative of exp(-x) p_m as exp(-x) * A_m with
    # A_m = (-1)^m (x P_m - 1), P_m = sum_{j<m} (-1)^(j+1) p_j.
    # Differentiating demands (-1)^m (P_m + x P_m' - x P_m + 1) == p_m.
    antiderivs = {}
    for m in range(1, max_index + 1):
        pm_sum = (0,)
        for j in range(m):
            pm_sum = _padd(pm_sum, _pscale(rows[j], (-1) ** (j + 1)))
        a_m = _pscale(_padd(_pmulx(pm_sum), (-1,)), (-1) ** m)
        antiderivs[m] = a_m
        lhs = _padd(
            _padd(pm_sum, _pmulx(_pderiv(pm_sum))),
            _padd(_pscale(_pmulx(pm_sum), -1), (1,)),
        )
        checks.append(
            IdentityCheck("antiderivative", m, _peq(_pscale(lhs, (-1) ** m), rows[m]))
        )

    # Antiderivative recursion: A_{m+1} == x p_m - A_m.
    for m in range(1, max_index):
        rhs = _padd(_pmulx(rows[m]), _pscale(antiderivs[m], -1))
        checks.append(IdentityCheck("antiderivative-recursion", m, _peq(antiderivs[m + 1], rhs)))

    # Division form of the derivative recursion: p_{m+1} / x == p_m' - p_m.
    # Exact because every row with m >= 1 has zero constant term.
    for m in range(max_index + 1):
        shifted = rows[m + 1][1:]
        rhs = _padd(_pderiv(rows[m]), _pscale(rows[m], -1))
        checks.append(IdentityCheck("euler-division", m, _peq(shifted, rhs)))

    return checks
