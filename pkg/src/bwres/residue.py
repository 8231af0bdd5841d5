"""Analytic kernel: positive-frequency projection, normal-covariable line
integrals via residues, and exact even moments over the unit 2-sphere.

Every value that has picked up a factor of pi carries it as an explicit
integer grade next to an exact rational payload; no pi ever becomes a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import (GaussianRational, ParamPoly, PP_ZERO, RatXi,
                   INDEX, REGISTRY)
from .clifford import CliffElem


class DecayError(ValueError):
    """Integrand does not fall off fast enough for the line integral."""


def pi_plus_ratxi(f: RatXi) -> RatXi:
    """Projection onto the span of (xin - i)^{-k}: keep the principal part at
    the upper pole, drop the polynomial part and the lower principal part.

    Polynomials belong to the complementary subspace, so a plain constant
    projects to zero; see the worked instances in the tests.
    """
    return f.plus_part()


def pi_plus(f: CliffElem) -> CliffElem:
    return f.map_coeffs(pi_plus_ratxi)


def pi_minus_with_poly(f: RatXi) -> RatXi:
    """The complement: polynomial part plus the lower principal part."""
    poly, _, minus = f.partial_fractions()
    out = RatXi.from_poly(poly)
    for k, c in minus:
        out = out + RatXi(c, 0, k)
    return out


@dataclass(frozen=True)
class PiScaled:
    """Exact payload times pi**pi_power."""
    value: ParamPoly
    pi_power: int

    def __add__(self, other: "PiScaled") -> "PiScaled":
        if other.value.is_zero():
            return self
        if self.value.is_zero():
            return other
        if self.pi_power != other.pi_power:
            raise ValueError("cannot add different pi grades")
        return PiScaled(self.value + other.value, self.pi_power)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __str__(self):
        if self.pi_power == 0:
            return str(self.value)
        return f"({self.value}) * pi^{self.pi_power}"


def integrate_xin_ratxi(f: RatXi) -> PiScaled:
    """Integral of f over the real xin line, evaluated exactly.

    The integrand is rational with poles only at -+i, so the line integral
    equals 2*pi*i times the residue at +i once f = O(xin^-2); anything
    slower diverges and is rejected.
    """
    if f.is_zero():
        return PiScaled(PP_ZERO, 1)
    if f.decay_order() < 2:
        raise DecayError(
            f"integrand decays like xin^-{f.decay_order()}; need at least xin^-2")
    res = f.residue_at_plus_i()
    return PiScaled(res.scale(GaussianRational(0, 2)), 1)


def integrate_xin(f: CliffElem) -> "CliffPi":
    """Coefficient-wise line integral of a Clifford-valued integrand."""
    terms = {}
    grade = 1
    for w, c in f.terms.items():
        val = integrate_xin_ratxi(c)
        if not val.is_zero():
            terms[w] = val.value
    return CliffPi(terms, grade)


@dataclass(frozen=True)
class CliffPi:
    """Clifford element with polynomial coefficients times a pi grade."""
    terms: dict
    pi_power: int


# ---------------------------------------------------------------------------
# Sphere moments
# ---------------------------------------------------------------------------

def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def sphere_moment(exponents) -> PiScaled:
    """Exact moment of xi1^a xi2^b xi3^c over the unit 2-sphere.

    Odd moments vanish by symmetry.  Even moments follow the pairing rule
    |S^2| * prod (a_i - 1)!! / prod_{m=1..k} (2m + 1) for total degree 2k,
    with |S^2| = 4*pi carried as a pi grade.
    """
    exps = tuple(exponents)
    if len(exps) != 3:
        raise ValueError("expected exponents for (xi1, xi2, xi3)")
    if any(e < 0 for e in exps):
        raise ValueError("negative exponent")
    if any(e % 2 for e in exps):
        return PiScaled(PP_ZERO, 1)
    k = sum(exps) // 2
    num = 1
    for e in exps:
        num *= _double_factorial(e - 1)
    den = 1
    for m in range(1, k + 1):
        den *= 2 * m + 1
    return PiScaled(ParamPoly.const(GaussianRational(Fraction(4 * num, den))), 1)


_XI_IDX = tuple(INDEX[n] for n in ("xi1", "xi2", "xi3"))
_BAD_FOR_SPHERE = tuple(INDEX[n] for n in ("xin", "L", "e"))


def integrate_sphere(p: ParamPoly) -> PiScaled:
    """Integrate a pure polynomial in xi1..xi3 over the unit sphere; the
    parameter part of each monomial rides along.

    Residual dependence on the normal covariable (or an unsubstituted L/e
    marker) means an upstream step was skipped, and is an error.
    """
    total = PP_ZERO
    for m, c in p.terms.items():
        exps = [0, 0, 0]
        rest = []
        for idx, e in m:
            if idx in _BAD_FOR_SPHERE:
                raise ValueError(f"sphere integrand still depends on {REGISTRY[idx]}")
            if idx in _XI_IDX:
                exps[_XI_IDX.index(idx)] = e
            else:
                rest.append((idx, e))
        mom = sphere_moment(exps)
        if mom.is_zero():
            continue
        total = total + ParamPoly({tuple(rest): c}) * mom.value
    return PiScaled(total, 1)


def integrate_trace_over_boundary_sphere(tr: RatXi) -> PiScaled:
    """Full measure step for a traced integrand: line integral in xin, then
    the sphere average in xi'; returns payload * pi^2."""
    line = integrate_xin_ratxi(tr)
    sphere = integrate_sphere(line.value)
    return PiScaled(sphere.value, line.pi_power + sphere.pi_power)
