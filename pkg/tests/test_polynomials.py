"""Exact checks for the polynomial triangle and Stirling machinery."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expseries import (
    DomainError,
    OperatorPoly,
    StirlingTable,
    diagonal_high,
    diagonal_low,
    exp_weighted_integral,
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

# Rows 0..8, expanded by hand by repeated application of x*d/dx to exp(-x).
KNOWN_ROWS = [
    (1,),
    (0, -1),
    (0, -1, 1),
    (0, -1, 3, -1),
    (0, -1, 7, -6, 1),
    (0, -1, 15, -25, 10, -1),
    (0, -1, 31, -90, 65, -15, 1),
    (0, -1, 63, -301, 350, -140, 21, -1),
    (0, -1, 127, -966, 1701, -1050, 266, -28, 1),
]


def stirling2_reference(n: int, m: int) -> int:
    """Independent oracle: the alternating binomial closed form."""
    total = sum((-1) ** (m - i) * math.comb(m, i) * i**n for i in range(m + 1))
    q, r = divmod(total, math.factorial(m))
    assert r == 0
    return q


class TestStirling:
    def test_boundary(self):
        assert stirling2(0, 0) == 1
        for n in range(1, 10):
            assert stirling2(n, 0) == 0
            assert stirling2(n, 1) == 1
            assert stirling2(n, n) == 1

    @pytest.mark.parametrize("n,m,expected", [(4, 2, 7), (8, 3, 966)])
    def test_known_values(self, n, m, expected):
        assert stirling2(n, m) == expected

    def test_against_closed_form(self):
        for n in range(21):
            for m in range(n + 1):
                assert stirling2(n, m) == stirling2_reference(n, m)

    def test_recursion_holds_inside_table(self):
        table = StirlingTable.build(40)
        for n in range(1, 40):
            for m in range(1, n + 1):
                assert table.value(n + 1, m) == m * table.value(n, m) + table.value(
                    n, m - 1
                )

    @pytest.mark.parametrize("n,m", [(2, 3), (-1, 0), (0, -1), (5, 9)])
    def test_domain_errors(self, n, m):
        with pytest.raises(DomainError):
            stirling2(n, m)

    def test_table_too_small(self):
        table = StirlingTable.build(3)
        with pytest.raises(DomainError):
            table.value(4, 2)


class TestTriangle:
    def test_first_rows_verbatim(self):
        rows = triangle(8)
        assert [p.coeffs for p in rows] == [tuple(r) for r in KNOWN_ROWS]

    def test_minimal(self):
        assert [p.coeffs for p in triangle(1)] == [(1,), (0, -1)]
        assert triangle(0)[0].coeffs == (1,)

    def test_four_way_equivalence_to_60(self):
        rows = triangle(60)
        table = StirlingTable.build(60)
        for m in range(61):
            assert poly_explicit(m) == rows[m]
            assert poly_from_stirling(m, table) == rows[m]
            assert poly_from_coeff_recursion(m) == rows[m]

    def test_row_invariants_to_60(self):
        rows = triangle(60)
        for m in range(1, 61):
            c = rows[m].coeffs
            assert c[0] == 0
            assert c[1] == -1
            assert c[m] == (-1) ** m
            if m >= 2:
                assert c[2] == 2 ** (m - 1) - 1
            for k in range(1, m + 1):
                assert c[k] != 0
                assert (c[k] > 0) == (k % 2 == 0)
                assert c[k] == (-1) ** k * stirling2(m, k)

    def test_poly_next_steps(self):
        rows = triangle(8)
        assert poly_next(rows[0]) == rows[1]
        assert poly_next(rows[2]) == rows[3]
        assert poly_next(rows[7]) == rows[8]

    def test_from_stirling_needs_deep_table(self):
        with pytest.raises(DomainError):
            poly_from_stirling(5, StirlingTable.build(4))

    def test_export_rows(self):
        rows = list(iter_triangle_rows(2))
        assert rows == [
            (0, 0, "1"),
            (1, 0, "0"),
            (1, 1, "-1"),
            (2, 0, "0"),
            (2, 1, "-1"),
            (2, 2, "1"),
        ]


class TestEvaluation:
    def test_examples(self):
        rows = triangle(5)
        assert poly_eval(rows[2], 1) == 0
        assert poly_eval(rows[1], 1j) == -1j
        assert poly_eval(rows[5], 1) == -2

    def test_integer_points_stay_exact(self):
        p = poly_explicit(12)
        assert isinstance(poly_eval(p, 3), int)
        assert poly_eval(p, 3) == sum(c * 3**k for k, c in enumerate(p.coeffs))

    @given(st.integers(0, 25), st.integers(-4, 4))
    @settings(max_examples=60, deadline=None)
    def test_horner_matches_direct_sum(self, m, x):
        p = poly_explicit(m)
        assert poly_eval(p, x) == sum(c * x**k for k, c in enumerate(p.coeffs))

    def test_bad_construction(self):
        with pytest.raises(DomainError):
            OperatorPoly(2, (0, -1))


class TestDiagonals:
    @pytest.mark.parametrize("n,m,expected", [(1, 5, -1), (2, 4, -6), (3, 6, 65)])
    def test_high(self, n, m, expected):
        assert diagonal_high(n, m) == expected

    @pytest.mark.parametrize("n,m,expected", [(0, 7, -1), (2, 6, -90), (3, 6, 65)])
    def test_low(self, n, m, expected):
        assert diagonal_low(n, m) == expected

    def test_match_triangle(self):
        rows = triangle(15)
        for m in range(1, 16):
            for n in range(1, m + 2):
                assert diagonal_high(n, m) == rows[m].coeffs[m - n + 1]
            for n in range(m):
                assert diagonal_low(n, m) == rows[m].coeffs[n + 1]

    def test_low_closed_forms(self):
        # second and third lowest diagonals against their explicit forms
        for m in range(3, 20):
            assert diagonal_low(2, m) * 2 == 2**m - 1 - 3 ** (m - 1)
        for m in range(4, 20):
            assert diagonal_low(3, m) * 6 == 3 * 2 ** (m - 1) - 1 - 3**m + 4 ** (m - 1)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            diagonal_high(0, 4)
        with pytest.raises(DomainError):
            diagonal_high(6, 4)
        with pytest.raises(DomainError):
            diagonal_low(4, 4)


class TestWeightedIntegral:
    @pytest.mark.parametrize("m,expected", [(0, 1), (1, -1), (9, -1)])
    def test_examples(self, m, expected):
        assert exp_weighted_integral(m) == expected

    def test_alternates_to_60(self):
        for m in range(61):
            assert exp_weighted_integral(m) == (-1) ** m


class TestIdentities:
    def test_all_pass_to_40(self):
        checks = verify_identities(40)
        failed = [c for c in checks if not c.passed]
        assert failed == []
        names = {c.identity for c in checks}
        assert names == {
            "binomial-derivative-sum",
            "telescoping-sum",
            "antiderivative",
            "antiderivative-recursion",
            "euler-division",
        }

    def test_single_row_expansions(self):
        # degree-2 instance of the binomial-derivative identity by hand:
        # p_2 + 2 p_1 + p_0 = (x^2 - x) - 2x + 1 = x^2 - 3x + 1 = p_2 - p_2'
        checks = verify_identities(2)
        rr2 = [c for c in checks if c.identity == "binomial-derivative-sum" and c.index == 2]
        assert rr2 and rr2[0].passed

    def test_division_identity_is_exact(self):
        rows = triangle(41)
        for m in range(41):
            shifted = rows[m + 1].coeffs[1:]
            d = rows[m].derivative_coeffs()
            expect = tuple(
                (d[k] if k < len(d) else 0) - rows[m].coeffs[k]
                for k in range(len(rows[m].coeffs))
            )
            n = max(len(shifted), len(expect))
            pad = lambda t: t + (0,) * (n - len(t))
            assert pad(shifted) == pad(expect)
