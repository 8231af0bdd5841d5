import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bwres.ring import (GaussianRational, GQ_I, GQ_ONE, GQ_ZERO, ParamPoly,
                        PP_ONE, PP_ZERO, RatXi, gq_arith, poly_arith,
                        ratxi_partial_fractions, xin_coeffs)
from conftest import rand_gq, rand_poly, rand_ratxi

fractions_st = st.fractions(min_value=-50, max_value=50, max_denominator=20)
gq_st = st.builds(GaussianRational, fractions_st, fractions_st)


class TestGaussianRational:
    def test_one_over_i(self):
        assert GQ_ONE / GQ_I == -GQ_I

    def test_modulus_squared(self):
        z = GaussianRational(Fraction(1, 2), Fraction(1, 2))
        assert z * z.conj() == GaussianRational(Fraction(1, 2))

    def test_imaginary_cancellation(self):
        assert GaussianRational(0, 2) + GaussianRational(0, -2) == GQ_ZERO

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GQ_ONE / GQ_ZERO

    def test_dispatch(self):
        a, b = GaussianRational(3, 1), GaussianRational(1, -2)
        assert gq_arith(a, b, "+") == a + b
        assert gq_arith(a, b, "-") == a - b
        assert gq_arith(a, b, "*") == a * b
        assert gq_arith(a, b, "/") * b == a

    @settings(max_examples=200, deadline=None)
    @given(gq_st, gq_st, gq_st)
    def test_field_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a

    @settings(max_examples=200, deadline=None)
    @given(gq_st)
    def test_text_round_trip(self, a):
        assert GaussianRational.parse(str(a)) == a

    def test_parse_forms(self):
        assert GaussianRational.parse("1/2-3/4*i") == GaussianRational(
            Fraction(1, 2), Fraction(-3, 4))
        assert GaussianRational.parse("-i") == -GQ_I
        assert GaussianRational.parse("5") == GaussianRational(5)
        assert GaussianRational.parse("2/3*i") == GaussianRational(0, Fraction(2, 3))


class TestParamPoly:
    def test_difference_of_squares(self):
        xi1, xi2 = ParamPoly.var("xi1"), ParamPoly.var("xi2")
        assert (xi1 + xi2) * (xi1 - xi2) == xi1 * xi1 - xi2 * xi2

    def test_times_zero(self, rng):
        p = rand_poly(rng)
        assert (p * PP_ZERO).is_zero()

    def test_free_commutative_monomial(self):
        p = ParamPoly.var("hp") * ParamPoly.var("v1") * ParamPoly.var("w1")
        assert str(p) == "hp*v1*w1"

    def test_ring_laws_random(self):
        rng = random.Random(11)
        for _ in range(200):
            a, b, c = (rand_poly(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_canonical_zero(self):
        rng = random.Random(12)
        for _ in range(200):
            p = rand_poly(rng)
            assert (p - p) == PP_ZERO
            assert not (p - p).terms

    def test_dispatch(self, rng):
        p, q = rand_poly(rng), rand_poly(rng)
        assert poly_arith(p, q, "+") == p + q
        assert poly_arith(p, q, "-") == p - q
        assert poly_arith(p, q, "*") == p * q

    def test_serialization_deterministic(self, rng):
        p = rand_poly(rng, n_terms=6)
        rebuilt = ParamPoly(dict(reversed(list(p.terms.items()))))
        assert str(p) == str(rebuilt)

    def test_substitution_and_eval(self):
        p = ParamPoly.var("L") * ParamPoly.var("hp") + ParamPoly.var("L", 2)
        q = p.subs_one("L")
        assert q == ParamPoly.var("hp") + PP_ONE
        val = p.evaluate({"L": GaussianRational(2), "hp": GaussianRational(3)})
        assert val == GaussianRational(10)

    def test_diff(self):
        p = ParamPoly.var("xin", 3) + ParamPoly.var("xin") * ParamPoly.var("L")
        d = p.diff("xin")
        assert d == ParamPoly.var("xin", 2) * ParamPoly.const(3) + ParamPoly.var("L")


class TestRatXi:
    def test_simple_pole_pair(self):
        f = RatXi(PP_ONE, 1, 1)            # 1/(1+xin^2)
        poly, plus, minus = f.partial_fractions()
        assert poly.is_zero()
        assert plus == [(1, ParamPoly.const(GaussianRational(0, Fraction(-1, 2))))]
        assert minus == [(1, ParamPoly.const(GaussianRational(0, Fraction(1, 2))))]

    def test_with_polynomial_part(self):
        xin = ParamPoly.var("xin")
        f = RatXi(xin * xin, 1, 1)         # xin^2/(1+xin^2)
        poly, plus, minus = f.partial_fractions()
        assert poly == PP_ONE
        assert plus == [(1, ParamPoly.const(GaussianRational(0, Fraction(1, 2))))]
        assert minus == [(1, ParamPoly.const(GaussianRational(0, Fraction(-1, 2))))]

    def test_pure_principal_part(self):
        f = RatXi(PP_ONE, 3, 0)
        poly, plus, minus = f.partial_fractions()
        assert poly.is_zero() and minus == []
        assert plus == [(3, PP_ONE)]

    def test_recombination_exact(self):
        rng = random.Random(13)
        for _ in range(200):
            f = rand_ratxi(rng)
            assert RatXi.recombine(*f.partial_fractions()) == f

    def test_canonicalization_strips_common_factors(self):
        xin = ParamPoly.var("xin")
        f = RatXi((xin - ParamPoly.const(GQ_I)) * (xin + ParamPoly.const(GQ_I)), 2, 1)
        assert (f.pole_plus, f.pole_minus) == (1, 0)

    def test_derivative_quotient_rule(self):
        f = RatXi(PP_ONE, 1, 1)
        d = f.d_xin()
        xin = ParamPoly.var("xin")
        assert d == RatXi(xin.scale(-2), 2, 2)

    def test_derivative_matches_difference_quotient_structure(self):
        rng = random.Random(14)
        for _ in range(50):
            f = rand_ratxi(rng, max_pole=2)
            g = rand_ratxi(rng, max_pole=2)
            assert (f * g).d_xin() == f.d_xin() * g + f * g.d_xin()

    def test_evaluate(self):
        f = RatXi(ParamPoly.var("hp"), 1, 1)
        val = f.evaluate({"hp": GaussianRational(3)}, GaussianRational(2))
        assert val == GaussianRational(3) / GaussianRational(5)

    def test_module_level_alias(self):
        assert ratxi_partial_fractions(RatXi(PP_ONE, 1, 1))[0].is_zero()

    def test_xin_coeff_split(self):
        xin = ParamPoly.var("xin")
        p = xin * xin * ParamPoly.var("hp") + PP_ONE
        coeffs = xin_coeffs(p)
        assert len(coeffs) == 3
        assert coeffs[0] == PP_ONE and coeffs[2] == ParamPoly.var("hp")
