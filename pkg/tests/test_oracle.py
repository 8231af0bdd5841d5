import math
import random
from fractions import Fraction

import numpy as np
import pytest

from bwres.boundary import compute_case, enumerate_cases
from bwres.oracle import (GAMMA, BatchContext, NumericCase, contour_pi_plus,
                          eval_ratxi, numeric_case_values, random_parameters,
                          sphere_nodes, word_matrix)
from bwres.residue import sphere_moment
from bwres.ring import GaussianRational
from conftest import rand_ratxi

R = Fraction


class TestGammaMatrices:
    def test_clifford_relation(self):
        for i in range(4):
            for j in range(4):
                anti = GAMMA[i] @ GAMMA[j] + GAMMA[j] @ GAMMA[i]
                expected = -2 * np.eye(4) if i == j else np.zeros((4, 4))
                assert np.allclose(anti, expected)

    def test_word_matrices_multiply(self):
        assert np.allclose(word_matrix(0b0011), GAMMA[0] @ GAMMA[1])
        assert np.allclose(word_matrix(0), np.eye(4))


class TestSphereRule:
    def test_matches_exact_moments(self):
        nodes, weights = sphere_nodes()
        rng = random.Random(51)
        for _ in range(20):
            exps = (2 * rng.randint(0, 2), 2 * rng.randint(0, 1), 2 * rng.randint(0, 1))
            quad = sum(w * (n[0] ** exps[0]) * (n[1] ** exps[1]) * (n[2] ** exps[2])
                       for n, w in zip(nodes, weights))
            exact = sphere_moment(exps)
            want = float(exact.value.terms.get((), GaussianRational(0)).re) * math.pi
            assert abs(quad - want) < 1e-12 * max(1.0, abs(want))

    def test_odd_monomials_integrate_to_zero(self):
        nodes, weights = sphere_nodes()
        quad = sum(w * n[0] * n[1] ** 2 for n, w in zip(nodes, weights))
        assert abs(quad) < 1e-14


class TestProjectionContour:
    def test_matches_symbolic_on_random_rationals(self):
        rng = random.Random(52)
        assign = {"xi1": R(1, 2), "xi2": R(-1, 3), "xi3": R(2, 5), "hp": R(1, 4),
                  "v1": R(1, 2), "w2": R(-3, 4), "L": R(1)}
        for _ in range(30):
            f = rand_ratxi(rng, max_pole=3)
            s = rng.uniform(-3, 3)
            want = eval_ratxi(f.plus_part(), assign, complex(s))
            got = contour_pi_plus(f, assign, s)
            assert abs(got - want) < 1e-9 * max(1.0, abs(want))


class TestBatchedSymbols:
    def test_leading_inverse_matches_exact(self):
        rng = np.random.default_rng(53)
        params = [random_parameters(rng) for _ in range(2)]
        ctx = BatchContext(params)
        xi = np.array([[0.6, 0.64, np.sqrt(1 - 0.6 ** 2 - 0.64 ** 2)]])
        zeta = np.array([0.37 + 0.0j])
        got = ctx.q_m1(xi, zeta, 0.0)[0, 0, 0]
        cxi = sum(xi[0][j] * GAMMA[j] for j in range(3)) + zeta[0] * GAMMA[3]
        want = 1j * cxi / (1.0 + zeta[0] ** 2)
        assert np.allclose(got, want)

    def test_case_values_match_engine(self):
        rng = np.random.default_rng(54)
        params = [random_parameters(rng) for _ in range(2)]
        spec = next(s for s in enumerate_cases("type2") if s.label == "III")
        exact = compute_case(spec, "consistent")
        want = np.array([float(exact.evaluate(p)) * math.pi ** 2 for p in params])
        got = numeric_case_values(params, spec.operator_type, spec.part, spec.r,
                                  spec.l, spec.k, spec.j, spec.alpha_total,
                                  "consistent")
        assert np.max(np.abs(got - want) / np.maximum(np.abs(want), 1.0)) < 1e-7

    def test_tangential_cases_are_numerically_zero(self):
        rng = np.random.default_rng(55)
        params = [random_parameters(rng)]
        got = numeric_case_values(params, "type1", "conn", 0, -2, 0, 0, 1,
                                  "consistent")
        assert np.allclose(got, 0.0)

    def test_bad_convention_rejected(self):
        with pytest.raises(ValueError):
            BatchContext([], convention="nope")
