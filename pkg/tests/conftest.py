from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bwres.ring import (GaussianRational, ParamPoly, RatXi, PP_ZERO, INDEX)
from bwres.clifford import CliffElem


def rand_fraction(rng: random.Random, span: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def rand_gq(rng: random.Random, span: int = 12) -> GaussianRational:
    return GaussianRational(rand_fraction(rng, span), rand_fraction(rng, span))


_POLY_VARS = ("xi1", "xi2", "xi3", "hp", "v1", "w2", "L")


def rand_poly(rng: random.Random, n_terms: int = 4, with_xin: bool = False,
              max_exp: int = 2) -> ParamPoly:
    out = PP_ZERO
    vars_ = _POLY_VARS + (("xin",) if with_xin else ())
    for _ in range(rng.randint(0, n_terms)):
        term = ParamPoly.const(rand_gq(rng, 6))
        for _ in range(rng.randint(0, 3)):
            term = term * ParamPoly.var(rng.choice(vars_), rng.randint(1, max_exp))
        out = out + term
    return out


def rand_ratxi(rng: random.Random, max_pole: int = 3) -> RatXi:
    return RatXi(rand_poly(rng, with_xin=True),
                 rng.randint(0, max_pole), rng.randint(0, max_pole))


def rand_cliff(rng: random.Random, n_terms: int = 3) -> CliffElem:
    terms = {}
    for _ in range(rng.randint(0, n_terms)):
        word = rng.randint(0, 15)
        terms[word] = rand_ratxi(rng, max_pole=2)
    return CliffElem(terms)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
