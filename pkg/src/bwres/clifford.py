"""Clifford algebra over the boundary-adapted orthonormal frame
{e1, e2, e3, e4 = dxn} with the relation c(ei)c(ej) + c(ej)c(ei) = -2 delta_ij,
plus the normalized trace on the rank-4 module.

Words are bitmasks over the four generators; normalization keeps indices
strictly increasing, so products reduce to a sign times a single word.
The trace is combinatorial: 4 on the empty word, 0 on every other word.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .ring import (GaussianRational, GQ_ZERO, ParamPoly, PP_ONE, PP_ZERO,
                   RatXi, RX_ZERO, INDEX)

N_GEN = 4
IDENTITY_WORD = 0


def word_from_indices(indices) -> int:
    mask = 0
    for j in indices:
        if not 1 <= j <= N_GEN:
            raise ValueError(f"generator index {j} out of range 1..{N_GEN}")
        if mask & (1 << (j - 1)):
            raise ValueError("word indices must be distinct")
        mask |= 1 << (j - 1)
    return mask


def word_indices(mask: int):
    return tuple(j + 1 for j in range(N_GEN) if mask & (1 << j))


def word_str(mask: int) -> str:
    if mask == 0:
        return "1"
    return ".".join(f"c{j}" for j in word_indices(mask))


def word_mul(a: int, b: int):
    """Product of two normalized words: (sign, word).

    Reordering sign counts the transpositions needed to interleave b into a;
    each repeated generator then contracts with c^2 = -1.
    """
    sign = 1
    # number of generators of a strictly above each generator of b
    for j in range(N_GEN):
        if b & (1 << j):
            higher = a >> (j + 1)
            sign *= -1 if bin(higher).count("1") & 1 else 1
    common = a & b
    sign *= -1 if bin(common).count("1") & 1 else 1
    return sign, a ^ b


class CliffElem:
    """Finite sum of normalized Clifford words with RatXi coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, RatXi] | None = None):
        cleaned = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    cleaned[w] = c
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("CliffElem is immutable")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero() -> "CliffElem":
        return CLIFF_ZERO

    @staticmethod
    def scalar(c: RatXi) -> "CliffElem":
        return CliffElem({IDENTITY_WORD: c})

    @staticmethod
    def generator(j: int, coeff: RatXi | None = None) -> "CliffElem":
        return CliffElem({word_from_indices((j,)): coeff if coeff is not None else RatXi.from_poly(PP_ONE)})

    @staticmethod
    def from_vector(coeffs) -> "CliffElem":
        """sum_j coeffs[j-1] * c(e_j); coefficients RatXi or ParamPoly."""
        terms = {}
        for j, c in enumerate(coeffs, start=1):
            if isinstance(c, ParamPoly):
                c = RatXi.from_poly(c)
            if not c.is_zero():
                terms[word_from_indices((j,))] = c
        return CliffElem(terms)

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "CliffElem") -> "CliffElem":
        if not isinstance(other, CliffElem):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, RX_ZERO) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return CliffElem(out)

    def __neg__(self) -> "CliffElem":
        return CliffElem({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "CliffElem") -> "CliffElem":
        return self + (-other)

    def __mul__(self, other) -> "CliffElem":
        if isinstance(other, (int, Fraction, GaussianRational, ParamPoly, RatXi)):
            return self.scale(other)
        if not isinstance(other, CliffElem):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                sign, w = word_mul(w1, w2)
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = out.get(w, RX_ZERO) + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return CliffElem(out)

    def __rmul__(self, other):
        # scalars commute with everything; true Clifford products use __mul__
        if isinstance(other, (int, Fraction, GaussianRational, ParamPoly, RatXi)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "CliffElem":
        if isinstance(c, ParamPoly):
            c = RatXi.from_poly(c)
        if not isinstance(c, RatXi):
            c = RatXi.const(c)
        return CliffElem({w: co * c for w, co in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, CliffElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, fn) -> "CliffElem":
        return CliffElem({w: fn(c) for w, c in self.terms.items()})

    def coeff(self, word: int) -> RatXi:
        return self.terms.get(word, RX_ZERO)

    def trace(self) -> RatXi:
        """Tr on the rank-4 module: 4 * (identity-word coefficient)."""
        return self.coeff(IDENTITY_WORD) * 4

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"[{self.terms[w]}]*{word_str(w)}" if w else f"[{self.terms[w]}]"
                 for w in sorted(self.terms)]
        return " + ".join(parts)

    def __repr__(self):
        return f"CliffElem({self})"


CLIFF_ZERO = CliffElem()
CLIFF_ONE = CliffElem({IDENTITY_WORD: RatXi.from_poly(PP_ONE)})


def cliff_mul(a: CliffElem, b: CliffElem) -> CliffElem:
    return a * b


def cliff_trace(a: CliffElem) -> RatXi:
    return a.trace()


def recognize_tangential_norm(p: ParamPoly) -> ParamPoly:
    """Optional rewrite xi1^2 + xi2^2 + xi3^2 -> L on a polynomial.

    Greedy pass: whenever the three sibling monomials m*xi1^2, m*xi2^2,
    m*xi3^2 carry a common coefficient part, trade that part for m*L.
    Deterministic (monomials visited in canonical order) and idempotent on
    the fixed point.
    """
    i1, i2, i3, iL = INDEX["xi1"], INDEX["xi2"], INDEX["xi3"], INDEX["L"]
    terms = dict(p.terms)
    changed = True
    while changed:
        changed = False
        for m in sorted(terms):
            c = terms.get(m)
            if c is None or not c:
                continue
            d = dict(m)
            if d.get(i1, 0) < 2:
                continue
            base = dict(d)
            base[i1] -= 2
            if base[i1] == 0:
                del base[i1]
            sib2 = dict(base)
            sib2[i2] = sib2.get(i2, 0) + 2
            sib3 = dict(base)
            sib3[i3] = sib3.get(i3, 0) + 2
            m2 = tuple(sorted(sib2.items()))
            m3 = tuple(sorted(sib3.items()))
            c2 = terms.get(m2, GQ_ZERO)
            c3 = terms.get(m3, GQ_ZERO)
            if c2 == c and c3 == c:
                for mm in (m, m2, m3):
                    del terms[mm]
                mL = dict(base)
                mL[iL] = mL.get(iL, 0) + 1
                key = tuple(sorted(mL.items()))
                s = terms.get(key, GQ_ZERO) + c
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s
                changed = True
                break
    return ParamPoly(terms)


def recognize_L(elem: CliffElem) -> CliffElem:
    """Apply the |xi'|^2 -> L rewrite to every numerator."""
    def fix(r: RatXi) -> RatXi:
        return RatXi(recognize_tangential_norm(r.num), r.pole_plus, r.pole_minus)
    return elem.map_coeffs(fix)


# ---------------------------------------------------------------------------
# Trace workhorses used by the case engine and its audits
# ---------------------------------------------------------------------------

def c_vector_poly(name_prefix: str) -> CliffElem:
    """c(u) = sum_k u_k c(e_k) with formal components <prefix>1..<prefix>4."""
    return CliffElem.from_vector([ParamPoly.var(f"{name_prefix}{k}") for k in range(1, 5)])


def covariant_gradient_prefix() -> CliffElem:
    """sum_j c(w) c(e_j) c(sum_k A_jk e_k): the zeroth-order factor of the
    gradient-part operators.  A_jk are the formal covariant-derivative
    components of the vector field being differentiated."""
    cw = c_vector_poly("w")
    out = CLIFF_ZERO
    for j in range(1, 5):
        col = CliffElem.from_vector([ParamPoly.var(f"A{j}{k}") for k in range(1, 5)])
        out = out + cw * CliffElem.generator(j) * col
    return out


def trace_gradient_contraction() -> ParamPoly:
    """Tr( sum_j c(w)c(e_j)c(sum_k A_jk e_k)c(dxn) ), expanded exactly.

    Equals 4*(sum_j A_jj w4 - sum_k w_k A_4k + sum_j w_j A_j4).
    """
    t = (covariant_gradient_prefix() * CliffElem.generator(4)).trace()
    assert t.is_poly()
    return t.num


def trace_xi_pair_sum() -> ParamPoly:
    """sum_{k<4} Tr( c(w) c(xi') c(e_k) c(dxn) ) = 4 w4 (xi1+xi2+xi3)."""
    cw = c_vector_poly("w")
    cxi = CliffElem.from_vector([ParamPoly.var("xi1"), ParamPoly.var("xi2"),
                                 ParamPoly.var("xi3"), PP_ZERO])
    total = RX_ZERO
    for k in range(1, 4):
        total = total + (cw * cxi * CliffElem.generator(k) * CliffElem.generator(4)).trace()
    assert total.is_poly()
    return total.num


def spin_connection_elem(antisymmetric: bool = True) -> CliffElem:
    """(1/4) sum_{i,j} Om_ij c(e_i)c(e_j) with formal Om.

    With antisymmetric=True the coefficients obey Om_ji = -Om_ij (only the
    i<j symbols om{ij} appear); otherwise an independent symmetric set is
    used, which serves as the control case in the trace audit.
    """
    out = CLIFF_ZERO
    quarter = GaussianRational(Fraction(1, 4))
    for i in range(1, 5):
        for j in range(1, 5):
            if i == j:
                continue
            if i < j:
                om = ParamPoly.var(f"om{i}{j}")
            else:
                om = ParamPoly.var(f"om{j}{i}")
                if antisymmetric:
                    om = -om
            out = out + (CliffElem.generator(i) * CliffElem.generator(j)).scale(om.scale(quarter))
    return out


def spin_connection_trace(antisymmetric: bool = True) -> ParamPoly:
    """Tr( c(w) * A * c(dxn) ) for the formal connection element A.

    For antisymmetric Om the exact value is 2 * sum_{i<4} w_i om_{i4}; it is
    NOT identically zero.  The claimed vanishing holds only if the normal
    row/column of Om is dropped, which the collar geometry does not justify.
    """
    cw = c_vector_poly("w")
    t = (cw * spin_connection_elem(antisymmetric) * CliffElem.generator(4)).trace()
    assert t.is_poly()
    return t.num


def collar_spin_connection() -> CliffElem:
    """The connection element at the base point of the collar metric:
    (hp/4) * sum_{j<4} v_j c(e_j) c(dxn).

    This is the same Christoffel data that produces the catalog's
    order-zero Dirac symbol -(3/4) hp c(dxn); see symbols.catalog.
    """
    hp = ParamPoly.var("hp")
    quarter = GaussianRational(Fraction(1, 4))
    out = CLIFF_ZERO
    for j in range(1, 4):
        coeff = (hp * ParamPoly.var(f"v{j}")).scale(quarter)
        out = out + (CliffElem.generator(j) * CliffElem.generator(4)).scale(coeff)
    return out
