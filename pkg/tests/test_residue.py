import math
import random
from fractions import Fraction

import pytest

from bwres.clifford import CliffElem, c_vector_poly
from bwres.residue import (DecayError, integrate_sphere, integrate_xin_ratxi,
                           integrate_trace_over_boundary_sphere, pi_plus,
                           pi_plus_ratxi, pi_minus_with_poly, sphere_moment)
from bwres.ring import (GaussianRational, GQ_I, ParamPoly, PP_ONE, PP_ZERO, RatXi)
from bwres.symbols import catalog, sym_c_xi_prime
from bwres.oracle import contour_pi_plus, eval_ratxi, quadrature_line_integral
from conftest import rand_ratxi

R = Fraction
GQ = GaussianRational
XIN = ParamPoly.var("xin")


def rx(num, p=0, q=0):
    return RatXi(num, p, q)


class TestProjectionWorkedInstances:
    def test_leading_inverse_symbol(self):
        # i (c(xi') + xin c(dxn)) / (1 + xin^2)
        #   -> (c(xi') + i c(dxn)) / (2 (xin - i))
        elem = catalog("Dinv").component(-1).restrict()
        got = pi_plus(elem)
        half = GQ(R(1, 2))
        expected = CliffElem({
            1: rx(ParamPoly.var("xi1").scale(half), 1, 0),
            2: rx(ParamPoly.var("xi2").scale(half), 1, 0),
            4: rx(ParamPoly.var("xi3").scale(half), 1, 0),
            8: rx(ParamPoly.const(half * GQ_I), 1, 0),
        })
        assert got == expected

    def test_plain_inverse_quadratic(self):
        got = pi_plus_ratxi(rx(PP_ONE, 1, 1))
        assert got == rx(ParamPoly.const(GQ(0, R(-1, 2))), 1, 0)

    def test_even_part_drops_polynomial(self):
        got = pi_plus_ratxi(rx(XIN * XIN, 1, 1))
        assert got == rx(ParamPoly.const(GQ(0, R(1, 2))), 1, 0)

    def test_odd_multiple(self):
        got = pi_plus_ratxi(rx(XIN, 1, 1))
        assert got == rx(ParamPoly.const(GQ(R(1, 2))), 1, 0)

    def test_quintic_kernel_full_principal_part(self):
        """-i xin (3 xin^4 + 4 xin^2 - 7) / (2 (1+xin^2)^3) carries poles of
        every order at +i; the third-order part alone, which the reference
        table keeps, is not the whole projection."""
        # numerator: -(i/2) (3 xin^5 + 4 xin^3 - 7 xin)
        num = (XIN ** 5 * ParamPoly.const(3) + XIN ** 3 * ParamPoly.const(4)
               - XIN * ParamPoly.const(7)).scale(GQ(0, R(-1, 2)))
        got = pi_plus_ratxi(rx(num, 3, 3))
        expected = (rx(ParamPoly.const(GQ(0, R(-1, 2))), 3, 0)
                    + rx(ParamPoly.const(GQ(R(1, 2))), 2, 0)
                    + rx(ParamPoly.const(GQ(0, R(-3, 4))), 1, 0))
        assert got == expected
        # contour cross-check at a couple of real points
        for s in (0.3, -1.7):
            num_val = contour_pi_plus(rx(num, 3, 3), {}, s)
            sym_val = eval_ratxi(got, {}, complex(s))
            assert abs(num_val - sym_val) < 1e-10

    def test_double_pole_kernel_sign(self):
        """-2 i xin/(1+xin^2)^2 projects to -1/(2 (xin - i)^2); the reference
        table's sign on this instance is wrong, certified by the contour."""
        f = rx(XIN.scale(GQ(0, -2)), 2, 2)
        got = pi_plus_ratxi(f)
        expected = rx(ParamPoly.const(GQ(R(-1, 2))), 2, 0)
        assert got == expected
        for s in (0.4, 2.2):
            assert abs(contour_pi_plus(f, {}, s) - eval_ratxi(got, {}, complex(s))) < 1e-10
        reference_claim = rx(ParamPoly.const(GQ(R(1, 2))), 2, 0)
        assert got != reference_claim

    def test_inverse_quartic(self):
        got = pi_plus_ratxi(rx(PP_ONE, 2, 2))
        expected = (rx(ParamPoly.const(GQ(R(-1, 4))), 2, 0)
                    + rx(ParamPoly.const(GQ(0, R(-1, 4))), 1, 0))
        assert got == expected


class TestProjectionProperties:
    def test_idempotence(self):
        rng = random.Random(41)
        for _ in range(200):
            f = rand_ratxi(rng)
            p = pi_plus_ratxi(f)
            assert pi_plus_ratxi(p) == p

    def test_complement_identity(self):
        rng = random.Random(42)
        for _ in range(200):
            f = rand_ratxi(rng)
            assert pi_plus_ratxi(f) + pi_minus_with_poly(f) == f

    def test_contour_agreement_random(self):
        rng = random.Random(43)
        assign = {"xi1": R(1, 3), "xi2": R(-2, 5), "xi3": R(1, 2), "hp": R(3, 4),
                  "v1": R(1), "w2": R(-1, 2), "L": R(1)}
        for _ in range(25):
            f = rand_ratxi(rng, max_pole=2)
            s = rng.uniform(-2, 2)
            got = eval_ratxi(pi_plus_ratxi(f), assign, complex(s))
            want = contour_pi_plus(f, assign, s)
            assert abs(got - want) < 1e-8 * max(1.0, abs(want))


class TestLineIntegral:
    def test_arctangent(self):
        out = integrate_xin_ratxi(rx(PP_ONE, 1, 1))
        assert out.pi_power == 1
        assert out.value == PP_ONE

    def test_quartic(self):
        out = integrate_xin_ratxi(rx(PP_ONE, 2, 2))
        assert out.value == ParamPoly.const(GQ(R(1, 2)))

    def test_insufficient_decay(self):
        with pytest.raises(DecayError):
            integrate_xin_ratxi(rx(XIN, 1, 1))

    def test_quadrature_agreement(self):
        """50 random valid integrands, relative 1e-8 against adaptive
        quadrature of the same function."""
        rng = random.Random(44)
        assign = {"xi1": R(2, 3), "xi2": R(-1, 4), "xi3": R(1, 5), "hp": R(1, 2),
                  "v1": R(-2, 3), "w2": R(5, 7), "L": R(1)}
        done = 0
        while done < 50:
            f = rand_ratxi(rng, max_pole=3)
            if f.is_zero() or f.decay_order() < 2:
                continue
            done += 1
            exact_ps = integrate_xin_ratxi(f)
            val = exact_ps.value.evaluate({k: GQ(v) for k, v in assign.items()})
            exact = complex(val.re, val.im) * math.pi
            num = quadrature_line_integral(f, assign)
            assert abs(num - exact) <= 1e-8 * max(1.0, abs(exact))


class TestSphereMoments:
    def test_area(self):
        out = sphere_moment((0, 0, 0))
        assert out.pi_power == 1 and out.value == ParamPoly.const(4)

    def test_pair_moment(self):
        assert sphere_moment((2, 0, 0)).value == ParamPoly.const(GQ(R(4, 3)))
        assert sphere_moment((0, 2, 0)).value == ParamPoly.const(GQ(R(4, 3)))

    def test_odd_vanishes(self):
        assert sphere_moment((1, 1, 1)).is_zero()
        assert sphere_moment((1, 0, 0)).is_zero()
        assert sphere_moment((2, 1, 0)).is_zero()

    def test_sum_of_squares_is_area(self):
        total = sum(sphere_moment(tuple(2 if i == j else 0 for i in range(3)))
                    .value.terms[()].re for j in range(3))
        assert total == R(4)

    def test_quartic_moments(self):
        assert sphere_moment((4, 0, 0)).value == ParamPoly.const(GQ(R(4, 5)))
        assert sphere_moment((2, 2, 0)).value == ParamPoly.const(GQ(R(4, 15)))

    def test_integrate_sphere_constant(self):
        out = integrate_sphere(ParamPoly.var("hp"))
        assert out.value == ParamPoly.var("hp").scale(4)

    def test_integrate_sphere_bilinear(self):
        p = PP_ZERO
        for j in range(1, 4):
            for k in range(1, 4):
                p = p + (ParamPoly.var(f"v{j}") * ParamPoly.var(f"w{k}")
                         * ParamPoly.var(f"xi{j}") * ParamPoly.var(f"xi{k}"))
        out = integrate_sphere(p)
        expected = sum(((ParamPoly.var(f"v{j}") * ParamPoly.var(f"w{j}")).scale(GQ(R(4, 3)))
                        for j in (2, 3)),
                       (ParamPoly.var("v1") * ParamPoly.var("w1")).scale(GQ(R(4, 3))))
        assert out.value == expected

    def test_odd_polynomial_vanishes(self):
        p = ParamPoly.var("xi1") * ParamPoly.var("xi2") * ParamPoly.var("xi3")
        assert integrate_sphere(p).is_zero()

    def test_residual_normal_covariable_is_error(self):
        with pytest.raises(ValueError):
            integrate_sphere(ParamPoly.var("xin"))


class TestLowMomentIdentity:
    def test_jet_trace_average(self):
        """Average of sum_j xi_j * Tr(d_xn[v_j c(w) c(xi')]) over the sphere:
        -(16 pi / 3) (hp G + DG) in jet primitives, i.e.
        -(16 pi / 3) (sum_j D(vj wj) + (hp/2) G)."""
        cxi_p = sym_c_xi_prime()
        total = RatXi.zero()
        from bwres.symbols import SymElem, CollarFrac
        for j in range(1, 4):
            vj = ParamPoly.var(f"v{j}")
            cw = SymElem({1 << (k - 1): CollarFrac.from_poly(ParamPoly.var(f"w{k}"))
                          for k in range(1, 5)})
            sym = cw * cxi_p
            sym = sym.scale(CollarFrac.from_poly(vj))
            traced = sym.d_xn().restrict().trace()
            total = total + traced * ParamPoly.var(f"xi{j}")
        assert total.is_poly()
        out = integrate_sphere(total.num)
        hp = ParamPoly.var("hp")
        expected = PP_ZERO
        for j in range(1, 4):
            pair = (ParamPoly.var(f"dv{j}") * ParamPoly.var(f"w{j}")
                    + ParamPoly.var(f"v{j}") * ParamPoly.var(f"dw{j}"))
            expected = expected + pair.scale(GQ(R(-16, 3)))
            expected = expected + (hp * ParamPoly.var(f"v{j}")
                                   * ParamPoly.var(f"w{j}")).scale(GQ(R(-8, 3)))
        assert out.value == expected
