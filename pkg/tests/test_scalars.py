"""Exact scalar tower: canonical forms, gcd, field arithmetic, series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybe.errors import (
    DivisionByZero,
    EvalPole,
    OrderMismatch,
    PoleAtExpansionPoint,
    SubstitutionPole,
)
from ybe.scalars import (
    MultiPoly,
    P_H,
    P_S,
    P_U,
    P_V,
    RatFunc,
    TruncatedSeries,
    poly_divexact,
    poly_from_str,
    poly_gcd,
    poly_normalize,
    poly_to_str,
    ratfunc_from_str,
    ratfunc_to_str,
)

HALF = Fraction(1, 2)


def exp(s=0, u=0, v=0, h=0):
    return (s, u, v, h)


class TestNormalize:
    def test_cancellation(self):
        assert poly_normalize([(exp(u=1), 1), (exp(u=1), -1)]) == MultiPoly()

    def test_merge(self):
        assert poly_normalize([(exp(h=1), HALF), (exp(h=1), HALF)]) == P_H

    def test_coefficient_reduction(self):
        p = poly_normalize([(exp(s=1, u=1), Fraction(2, 4))])
        assert p == P_S * P_U * HALF

    def test_canonical_form_unique(self):
        a = (P_U + P_H) * (P_U - P_H)
        b = P_U * P_U - P_H * P_H
        assert a == b and hash(a) == hash(b)


class TestGcd:
    def test_difference_of_squares(self):
        assert poly_gcd(P_U * P_U - P_H * P_H, P_U + P_H) == P_U + P_H

    def test_coprime_variables(self):
        assert poly_gcd(P_U, P_H) == MultiPoly.const(1)

    def test_mixed_factor(self):
        # gcd(u(u + h/2), u^2) = u, checked by multiplying back
        a = P_U * (P_U + P_H * HALF)
        b = P_U * P_U
        g = poly_gcd(a, b)
        assert g == P_U
        assert poly_divexact(a, g) * g == a
        assert poly_divexact(b, g) * g == b

    def test_gcd_with_zero(self):
        assert poly_gcd(MultiPoly(), P_U * 2) == P_U
        assert poly_gcd(P_U * -3, MultiPoly()) == P_U

    def test_divides_both_and_cofactors_coprime(self):
        a = (P_U + P_H) ** 2 * (P_S - P_V)
        b = (P_U + P_H) * (P_S + P_V)
        g = poly_gcd(a, b)
        assert g == P_U + P_H
        assert poly_gcd(poly_divexact(a, g), poly_divexact(b, g)) == \
            MultiPoly.const(1)


class TestRatFuncArith:
    def test_add_same_denominator(self):
        x = RatFunc(P_H, P_U)
        assert x + x == RatFunc(P_H * 2, P_U)

    def test_inverse_cancellation(self):
        den = P_U + P_H * HALF
        assert RatFunc(P_H, den) * RatFunc(den) == RatFunc(P_H)

    def test_cross_multiplication(self):
        # 1/(u+h) - 1/u, against the cross-multiplied form
        got = RatFunc(1, P_U + P_H) - RatFunc(1, P_U)
        num = P_U - (P_U + P_H)
        den = P_U * (P_U + P_H)
        assert got == RatFunc(num, den)
        assert got == RatFunc(-P_H, den)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            RatFunc(P_U, MultiPoly())
        with pytest.raises(DivisionByZero):
            RatFunc(P_U) / RatFunc(MultiPoly())

    def test_denominator_normalization(self):
        # denominator is primitive with positive leading coefficient
        x = RatFunc(P_H, P_U * -2)
        assert x.den == P_U
        assert x.num == P_H * Fraction(-1, 2)


class TestSubstEval:
    def test_subst_sum(self):
        assert RatFunc(P_H, P_S).subst("s", P_U + P_V) == \
            RatFunc(P_H, P_U + P_V)

    def test_subst_pole(self):
        with pytest.raises(SubstitutionPole):
            RatFunc(P_H, P_S).subst("s", MultiPoly())

    def test_subst_shifted(self):
        x = RatFunc(P_H, P_S + P_H * 2)
        assert x.subst("s", P_U) == RatFunc(P_H, P_U + P_H * 2)

    def test_eval(self):
        x = RatFunc(P_H, P_U)
        assert x.eval({"s": 0, "u": 2, "v": 0, "h": 1}) == HALF

    def test_eval_pole(self):
        with pytest.raises(EvalPole):
            RatFunc(P_H, P_U + P_H).eval({"s": 0, "u": 1, "v": 0, "h": -1})

    def test_eval_after_simplification(self):
        x = RatFunc(P_U * P_U - P_H * P_H, P_U - P_H)
        assert x.eval({"s": 0, "u": 3, "v": 0, "h": 1}) == 4


class TestSeries:
    def test_long_division(self):
        # h/(u + h/2) = 0 + h/u - h^2/(2u^2) + h^3/(4u^3) + ...
        ser = RatFunc(P_H, P_U + P_H * HALF).series_in_h(3)
        assert ser.coeffs[0] == RatFunc(0)
        assert ser.coeffs[1] == RatFunc(1, P_U)
        assert ser.coeffs[2] == RatFunc(MultiPoly.const(-HALF), P_U ** 2)
        assert ser.coeffs[3] == RatFunc(MultiPoly.const(Fraction(1, 4)),
                                        P_U ** 3)

    def test_exact_fraction(self):
        ser = RatFunc(P_H, P_U).series_in_h(2)
        assert [bool(c) for c in ser.coeffs] == [False, True, False]

    def test_multiply_back(self):
        x = RatFunc(1, P_U + P_H)
        ser = x.series_in_h(2)
        assert ser.coeffs[0] == RatFunc(1, P_U)
        assert ser.coeffs[1] == RatFunc(-MultiPoly.const(1), P_U ** 2)
        assert ser.coeffs[2] == RatFunc(1, P_U ** 3)
        # (sum c_k h^k) * den == num  modulo h^3
        back = ser.resum() * RatFunc(P_U + P_H) - x * RatFunc(P_U + P_H)
        # the leftover must be divisible by h^(order+1)
        assert all(e[3] > 2 for e in back.num.terms)

    def test_pole_at_expansion_point(self):
        with pytest.raises(PoleAtExpansionPoint):
            RatFunc(1, P_H).series_in_h(1)

    def test_series_product_truncates(self):
        one = TruncatedSeries(2, [1, 1, 0])       # 1 + h
        other = TruncatedSeries(2, [1, -1, 0])    # 1 - h
        assert one * other == TruncatedSeries(2, [1, 0, -1])

    def test_truncation_kills_high_orders(self):
        x = RatFunc(P_H, P_U).series_in_h(1)
        assert (x * x).coeffs == TruncatedSeries(1, [0, 0]).coeffs

    def test_square_binomial(self):
        x = TruncatedSeries(2, [1, RatFunc(1, P_U), 0])
        sq = x * x
        assert sq.coeffs[1] == RatFunc(2, P_U)
        assert sq.coeffs[2] == RatFunc(1, P_U ** 2)

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatch):
            TruncatedSeries(1, [1, 1]) + TruncatedSeries(2, [1, 1, 1])


class TestStrings:
    def test_poly_round_trip(self):
        p = P_S ** 2 * P_U - P_H * HALF + MultiPoly.const(3)
        assert poly_from_str(poly_to_str(p)) == p

    def test_ratfunc_round_trip(self):
        x = RatFunc(P_U ** 2 - P_H, P_U * P_V + MultiPoly.const(2))
        assert ratfunc_from_str(ratfunc_to_str(x)) == x

    def test_zero(self):
        assert poly_to_str(MultiPoly()) == "0/1"
        assert poly_from_str("0/1") == MultiPoly()


# ---------------------------------------------------------------------------
# randomized properties
# ---------------------------------------------------------------------------

small_fraction = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def polys(draw, max_terms=4, max_exp=2):
    n_terms = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(n_terms):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(4))
        terms.append((e, draw(small_fraction)))
    return MultiPoly(terms)


@st.composite
def ratfuncs(draw):
    num = draw(polys())
    den = draw(polys(max_terms=2, max_exp=1))
    if not den:
        den = P_U + MultiPoly.const(1)
    return RatFunc(num, den)


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    if x:
        assert x * x.inv() == RatFunc(1)


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_eval_is_a_homomorphism(x, y):
    point = {"s": Fraction(3), "u": Fraction(5, 2), "v": Fraction(-2),
             "h": Fraction(1, 3)}
    try:
        xv, yv = x.eval(point), y.eval(point)
        assert (x + y).eval(point) == xv + yv
        assert (x * y).eval(point) == xv * yv
    except EvalPole:
        pass


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_gcd_divides_exactly(a, b):
    g = poly_gcd(a, b)
    if not a and not b:
        assert not g
        return
    for p in (a, b):
        if p:
            assert poly_divexact(p, g) * g == p


@settings(max_examples=30, deadline=None)
@given(ratfuncs(), st.integers(0, 3))
def test_resummation_matches_modulo_truncation(x, order):
    try:
        ser = x.series_in_h(order)
    except PoleAtExpansionPoint:
        return
    delta = ser.resum() - x
    # num of (resummed - x) must vanish modulo h^(order+1)
    if delta:
        assert all(e[3] > order for e in delta.num.terms)
