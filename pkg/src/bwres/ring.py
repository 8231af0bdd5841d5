"""Exact scalar arithmetic: Gaussian rationals, sparse multivariate polynomials
over a fixed indeterminate registry, and rational functions of the normal
covariable with poles restricted to xin = +/- i.

Everything here is immutable and exact; no floats anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Union[int, Fraction]


class GaussianRational:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rat = 0, im: Rat = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring/field ops ------------------------------------------------
    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "GaussianRational":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        n = other.norm_sq()
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * other.re + self.im * other.im) / n,
                                (self.im * other.re - self.re * other.im) / n)

    def __rtruediv__(self, other) -> "GaussianRational":
        return _coerce(other) / self

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return GQ_ONE / self ** (-n)
        out = GQ_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates / hashing -------------------------------------------
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    # -- text form: "p/q", "r/s*i", or "p/q+r/s*i" ----------------------
    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = f"{self.im}*i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        if self.re == 0:
            return im
        sign = "+" if self.im > 0 else ""
        return f"{self.re}{sign}{im}"

    def __repr__(self):
        return f"GQ({self})"

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        text = text.strip().replace(" ", "")
        if text in ("i", "+i"):
            return GQ_I
        if text == "-i":
            return -GQ_I
        # split at the sign that starts the imaginary part, if any
        if text.endswith("i"):
            body = text[:-1].rstrip("*")
            for pos in range(len(body) - 1, 0, -1):
                if body[pos] in "+-" and body[pos - 1] not in "+-/*":
                    re_s, im_s = body[:pos], body[pos:]
                    if im_s in ("+", "-"):
                        im_s += "1"
                    return GaussianRational(Fraction(re_s), Fraction(im_s))
            return GaussianRational(0, Fraction(body if body not in ("", "+", "-") else body + "1"))
        return GaussianRational(Fraction(text), 0)


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise TypeError(f"cannot coerce {type(x)!r} to GaussianRational")


GQ_ZERO = GaussianRational(0)
GQ_ONE = GaussianRational(1)
GQ_I = GaussianRational(0, 1)


def gq_arith(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    """Dispatch-style field arithmetic ('+', '-', '*', '/')."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Indeterminate registry.  Order is frozen: it defines the canonical
# lexicographic monomial order used by every serialized form.
# ---------------------------------------------------------------------------

REGISTRY: tuple = (
    ("xi1", "xi2", "xi3", "xin", "L", "e", "hp", "K")
    + tuple(f"v{j}" for j in range(1, 5))
    + tuple(f"w{j}" for j in range(1, 5))
    + tuple(f"dv{j}" for j in range(1, 5))
    + tuple(f"dw{j}" for j in range(1, 5))
    + tuple(f"A{j}{k}" for j in range(1, 5) for k in range(1, 5))
    + tuple(f"om{j}{k}" for j in range(1, 5) for k in range(j + 1, 5))
    + ("G", "DG", "Dnn")
)
INDEX = {name: i for i, name in enumerate(REGISTRY)}

# monomial: tuple of (registry index, exponent>0) pairs sorted by index
Monomial = tuple


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    d = dict(m1)
    for i, e in m2:
        d[i] = d.get(i, 0) + e
        if d[i] == 0:
            del d[i]
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial, idx: int) -> int:
    for i, e in m:
        if i == idx:
            return e
    return 0


def _mono_sort_key(m: Monomial):
    # dense exponent vector gives plain lex order on the registry
    vec = [0] * len(REGISTRY)
    for i, e in m:
        vec[i] = -e
    return tuple(vec)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(REGISTRY[i] + (f"^{e}" if e != 1 else "") for i, e in m)


class ParamPoly:
    """Sparse multivariate polynomial over GaussianRational.

    terms maps monomial -> nonzero coefficient; the zero polynomial is the
    empty map, which makes structural equality the same as ring equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None):
        cleaned = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = _coerce(c)
                if not c.is_zero():
                    cleaned[m] = c
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("ParamPoly is immutable")

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero() -> "ParamPoly":
        return PP_ZERO

    @staticmethod
    def const(c) -> "ParamPoly":
        return ParamPoly({(): _coerce(c)})

    @staticmethod
    def var(name: str, exp: int = 1) -> "ParamPoly":
        return ParamPoly({((INDEX[name], exp),): GQ_ONE})

    # -- ring ops ---------------------------------------------------------
    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, GQ_ZERO) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return ParamPoly(out) if out else PP_ZERO

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other) -> "ParamPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(m, GQ_ZERO) + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return ParamPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "ParamPoly":
        c = _coerce(c)
        if c.is_zero():
            return PP_ZERO
        return ParamPoly({m: co * c for m, co in self.terms.items()})

    def __pow__(self, n: int) -> "ParamPoly":
        out = PP_ONE
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure --------------------------------------------------------
    def degree_in(self, name: str) -> int:
        idx = INDEX[name]
        return max((mono_degree(m, idx) for m in self.terms), default=0)

    def contains(self, name: str) -> bool:
        idx = INDEX[name]
        return any(mono_degree(m, idx) > 0 for m in self.terms)

    def coeff_of(self, name: str, exp: int) -> "ParamPoly":
        """Coefficient of name^exp, as a polynomial in the other variables."""
        idx = INDEX[name]
        out = {}
        for m, c in self.terms.items():
            if mono_degree(m, idx) == exp:
                out[tuple((i, e) for i, e in m if i != idx)] = c
        return ParamPoly(out)

    def diff(self, name: str) -> "ParamPoly":
        idx = INDEX[name]
        out: dict = {}
        for m, c in self.terms.items():
            e = mono_degree(m, idx)
            if e == 0:
                continue
            rest = tuple((i, k) for i, k in m if i != idx)
            m2 = mono_mul(rest, ((idx, e - 1),) if e > 1 else ())
            s = out.get(m2, GQ_ZERO) + c * e
            if s.is_zero():
                out.pop(m2, None)
            else:
                out[m2] = s
        return ParamPoly(out)

    def subs_var(self, name: str, repl: "ParamPoly") -> "ParamPoly":
        """Substitute repl for the named indeterminate (exactly)."""
        idx = INDEX[name]
        out = PP_ZERO
        powers = {0: PP_ONE}
        for m, c in self.terms.items():
            e = mono_degree(m, idx)
            if e not in powers:
                powers[e] = repl ** e
            rest = tuple((i, k) for i, k in m if i != idx)
            out = out + ParamPoly({rest: c}) * powers[e]
        return out

    def subs_one(self, name: str) -> "ParamPoly":
        return self.subs_var(name, PP_ONE)

    def subs_gq(self, name: str, value: GaussianRational) -> "ParamPoly":
        return self.subs_var(name, ParamPoly.const(value))

    def evaluate(self, assign: Mapping[str, GaussianRational]) -> GaussianRational:
        """Full evaluation; every variable that occurs must be assigned."""
        total = GQ_ZERO
        for m, c in self.terms.items():
            val = c
            for i, e in m:
                name = REGISTRY[i]
                if name not in assign:
                    raise KeyError(f"no value for {name}")
                val = val * _coerce(assign[name]) ** e
            total = total + val
        return total

    def variables(self) -> set:
        return {REGISTRY[i] for m in self.terms for i, _ in m}

    # -- canonical text ----------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[m]
            cs = str(c)
            if not m:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono_str(m))
            elif cs == "-1":
                parts.append(f"-{mono_str(m)}")
            elif ("+" in cs[1:]) or ("-" in cs[1:]):
                parts.append(f"({cs})*{mono_str(m)}")
            else:
                parts.append(f"{cs}*{mono_str(m)}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"ParamPoly({self})"


PP_ZERO = ParamPoly()
PP_ONE = ParamPoly({(): GQ_ONE})


def poly_arith(p: ParamPoly, q: ParamPoly, op: str) -> ParamPoly:
    if op == "+":
        return p + q
    if op == "-":
        return p - q
    if op == "*":
        return p * q
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# xin-polynomial helpers (coefficients are ParamPoly without xin)
# ---------------------------------------------------------------------------

_XIN = "xin"


def xin_coeffs(p: ParamPoly) -> list:
    """[c0, c1, ...] with p = sum ck * xin^k; coefficients are xin-free."""
    deg = p.degree_in(_XIN)
    return [p.coeff_of(_XIN, k) for k in range(deg + 1)]


def from_xin_coeffs(coeffs: Iterable[ParamPoly]) -> ParamPoly:
    out = PP_ZERO
    xin = ParamPoly.var(_XIN)
    power = PP_ONE
    for c in coeffs:
        out = out + c * power
        power = power * xin
    return out


def _synth_div(coeffs: list, root: GaussianRational):
    """Divide sum ck xin^k by (xin - root); returns (quotient coeffs, remainder)."""
    n = len(coeffs)
    if n == 0:
        return [], PP_ZERO
    quot = [PP_ZERO] * (n - 1)
    carry = PP_ZERO
    for k in range(n - 1, 0, -1):
        carry = coeffs[k] + carry.scale(root) if k < n - 1 else coeffs[k]
        quot[k - 1] = carry
    rem = coeffs[0] + carry.scale(root)
    return quot, rem


class RatXi:
    """num / ((xin - i)^pole_plus * (xin + i)^pole_minus), num a ParamPoly.

    Canonical form strips every common factor of (xin -+ i) from the
    numerator, so structural equality is exact function equality.
    """

    __slots__ = ("num", "pole_plus", "pole_minus")

    def __init__(self, num: ParamPoly, pole_plus: int = 0, pole_minus: int = 0):
        if pole_plus < 0 or pole_minus < 0:
            raise ValueError("pole orders must be nonnegative")
        num, pole_plus, pole_minus = _ratxi_canonical(num, pole_plus, pole_minus)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "pole_plus", pole_plus)
        object.__setattr__(self, "pole_minus", pole_minus)

    def __setattr__(self, name, value):
        raise AttributeError("RatXi is immutable")

    @staticmethod
    def from_poly(p: ParamPoly) -> "RatXi":
        return RatXi(p, 0, 0)

    @staticmethod
    def const(c) -> "RatXi":
        return RatXi(ParamPoly.const(c), 0, 0)

    @staticmethod
    def zero() -> "RatXi":
        return RX_ZERO

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.pole_plus == 0 and self.pole_minus == 0

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "RatXi") -> "RatXi":
        if not isinstance(other, RatXi):
            return NotImplemented
        pp = max(self.pole_plus, other.pole_plus)
        pm = max(self.pole_minus, other.pole_minus)
        a = self.num * _den_power(pp - self.pole_plus, pm - self.pole_minus)
        b = other.num * _den_power(pp - other.pole_plus, pm - other.pole_minus)
        return RatXi(a + b, pp, pm)

    def __neg__(self) -> "RatXi":
        return RatXi(-self.num, self.pole_plus, self.pole_minus)

    def __sub__(self, other: "RatXi") -> "RatXi":
        return self + (-other)

    def __mul__(self, other) -> "RatXi":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RatXi(self.num.scale(other), self.pole_plus, self.pole_minus)
        if isinstance(other, ParamPoly):
            return RatXi(self.num * other, self.pole_plus, self.pole_minus)
        if not isinstance(other, RatXi):
            return NotImplemented
        return RatXi(self.num * other.num, self.pole_plus + other.pole_plus,
                     self.pole_minus + other.pole_minus)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatXi):
            return NotImplemented
        return (self.num == other.num and self.pole_plus == other.pole_plus
                and self.pole_minus == other.pole_minus)

    def __hash__(self):
        return hash((self.num, self.pole_plus, self.pole_minus))

    def d_xin(self) -> "RatXi":
        """d/dxin via the quotient rule; the pole lattice is preserved."""
        p, q = self.pole_plus, self.pole_minus
        dnum = self.num.diff(_XIN)
        if p == 0 and q == 0:
            return RatXi(dnum, 0, 0)
        xin = ParamPoly.var(_XIN)
        # d(N/D) = (N' D1 - N dD) / D1^... with D = (x-i)^p (x+i)^q:
        # N'*(x-i)(x+i) - N*(p*(x+i) + q*(x-i)) over (x-i)^{p+1}(x+i)^{q+1}
        fplus = xin - ParamPoly.const(GQ_I)
        fminus = xin + ParamPoly.const(GQ_I)
        new_num = dnum * fplus * fminus - self.num * (fplus.scale(q) + fminus.scale(p))
        return RatXi(new_num, p + 1, q + 1)

    # -- analytic structure -------------------------------------------------
    def partial_fractions(self):
        """Exact decomposition  self = poly + sum a_k/(xin-i)^k + sum b_k/(xin+i)^k.

        Returns (poly_part, plus_list, minus_list) where the lists hold
        (order k >= 1, xin-free ParamPoly coefficient) pairs, highest order
        first, and poly_part is a ParamPoly in xin.

        Method: long-divide the numerator by the full denominator, then read
        the principal coefficients off exact Taylor expansions of the
        remainder against the opposite-pole factor.
        """
        p, q = self.pole_plus, self.pole_minus
        coeffs = xin_coeffs(self.num)
        # polynomial part by repeated synthetic division bookkeeping:
        # divide by (x-i) p times and (x+i) q times keeping track of remainders
        # is awkward; instead divide by expanded denominator directly.
        den = _den_power(p, q)
        poly_part, rem = _poly_divmod_xin(self.num, den)
        plus = _principal(rem, p, q, at_plus=True)
        minus = _principal(rem, p, q, at_plus=False)
        return poly_part, plus, minus

    def recombine(poly_part: ParamPoly, plus, minus) -> "RatXi":
        """Inverse of partial_fractions (static-style helper)."""
        out = RatXi.from_poly(poly_part)
        for k, c in plus:
            out = out + RatXi(c, k, 0)
        for k, c in minus:
            out = out + RatXi(c, 0, k)
        return out

    recombine = staticmethod(recombine)

    def plus_part(self) -> "RatXi":
        """Principal part at xin = +i (the positive-frequency projection)."""
        _, plus, _ = self.partial_fractions()
        out = RX_ZERO
        for k, c in plus:
            out = out + RatXi(c, k, 0)
        return out

    def residue_at_plus_i(self) -> ParamPoly:
        """Coefficient of 1/(xin - i); xin-free."""
        _, plus, _ = self.partial_fractions()
        for k, c in plus:
            if k == 1:
                return c
        return PP_ZERO

    def xin_degree(self) -> int:
        return self.num.degree_in(_XIN)

    def decay_order(self) -> int:
        """Degree of decay at |xin| -> oo (2 means O(xin^-2))."""
        return self.pole_plus + self.pole_minus - self.xin_degree()

    def subs_vars_one(self, *names: str) -> "RatXi":
        num = self.num
        for n in names:
            num = num.subs_one(n)
        return RatXi(num, self.pole_plus, self.pole_minus)

    def evaluate(self, assign, xin_value: GaussianRational) -> GaussianRational:
        """Evaluate at a concrete point (xin must avoid +/- i)."""
        num = self.num.evaluate({**assign, "xin": xin_value})
        den = (xin_value - GQ_I) ** self.pole_plus * (xin_value + GQ_I) ** self.pole_minus
        return num / den

    def __str__(self) -> str:
        num = f"({self.num})"
        if self.pole_plus == 0 and self.pole_minus == 0:
            return str(self.num)
        den = []
        if self.pole_plus:
            den.append(f"(xin-i)^{self.pole_plus}" if self.pole_plus > 1 else "(xin-i)")
        if self.pole_minus:
            den.append(f"(xin+i)^{self.pole_minus}" if self.pole_minus > 1 else "(xin+i)")
        return f"{num} / " + "*".join(den)

    def __repr__(self):
        return f"RatXi({self})"


def _den_power(p: int, q: int) -> ParamPoly:
    xin = ParamPoly.var(_XIN)
    out = PP_ONE
    for _ in range(p):
        out = out * (xin - ParamPoly.const(GQ_I))
    for _ in range(q):
        out = out * (xin + ParamPoly.const(GQ_I))
    return out


def _ratxi_canonical(num: ParamPoly, p: int, q: int):
    if num.is_zero():
        return PP_ZERO, 0, 0
    coeffs = xin_coeffs(num)
    changed = True
    while changed:
        changed = False
        if p > 0:
            quot, rem = _synth_div(coeffs, GQ_I)
            if rem.is_zero():
                coeffs, p, changed = quot, p - 1, True
        if q > 0:
            quot, rem = _synth_div(coeffs, -GQ_I)
            if rem.is_zero():
                coeffs, q, changed = quot, q - 1, True
    xin = ParamPoly.var(_XIN)
    out = PP_ZERO
    power = PP_ONE
    for c in coeffs:
        out = out + c * power
        power = power * xin
    return out, p, q


def _poly_divmod_xin(num: ParamPoly, den: ParamPoly):
    """Long division in xin; den is monic in xin by construction."""
    nd = num.degree_in(_XIN)
    dd = den.degree_in(_XIN)
    if nd < dd:
        return PP_ZERO, num
    ncoeffs = xin_coeffs(num)
    dcoeffs = xin_coeffs(den)
    assert dcoeffs[-1] == PP_ONE
    quot = [PP_ZERO] * (nd - dd + 1)
    work = list(ncoeffs)
    for k in range(nd - dd, -1, -1):
        lead = work[k + dd]
        quot[k] = lead
        if lead.is_zero():
            continue
        for j, dc in enumerate(dcoeffs):
            work[k + j] = work[k + j] - lead * dc
    xin = ParamPoly.var(_XIN)
    qp = PP_ZERO
    rp = PP_ZERO
    power = PP_ONE
    for k in range(len(work)):
        if k < dd:
            rp = rp + work[k] * power
        power = power * xin
    power = PP_ONE
    for c in quot:
        qp = qp + c * power
        power = power * xin
    return qp, rp


def _principal(rem: ParamPoly, p: int, q: int, at_plus: bool):
    """Principal-part coefficients of rem/((x-i)^p (x+i)^q) at one pole.

    Exact Taylor expansion around the pole: with u = xin - pole,
    rem(pole+u) * (u + 2*pole)^{-other}: the binomial series for the second
    factor has Gaussian-rational coefficients, so the product series is exact.
    """
    order = p if at_plus else q
    other = q if at_plus else p
    if order == 0:
        return []
    pole = GQ_I if at_plus else -GQ_I
    # rem(pole + u) as polynomial in u, coefficients xin-free ParamPoly
    coeffs = xin_coeffs(rem)
    # shift: sum_k c_k (pole+u)^k -> collect powers of u with binomials
    shifted = [PP_ZERO] * max(len(coeffs), order)
    for k, ck in enumerate(coeffs):
        if ck.is_zero():
            continue
        binom = 1
        pw = pole ** k
        for m in range(0, min(k, order - 1) + 1):
            # C(k, m) * pole^{k-m}
            shifted[m] = shifted[m] + ck.scale(GaussianRational(binom) * pole ** (k - m))
            binom = binom * (k - m) // (m + 1)
    # series of (u + 2*pole)^{-other} up to u^{order-1}
    inv = [GQ_ZERO] * order
    two_pole = pole + pole
    c = two_pole ** (-other) if other else GQ_ONE
    binom = Fraction(1)
    for m in range(order):
        if other == 0:
            inv[m] = GQ_ONE if m == 0 else GQ_ZERO
            continue
        # C(-other, m) = (-1)^m C(other+m-1, m)
        inv[m] = c * GaussianRational(binom)
        binom = binom * Fraction(-(other + m), m + 1)
        c = c / two_pole
    # product series
    series = [PP_ZERO] * order
    for a in range(order):
        for b in range(order - a):
            series[a + b] = series[a + b] + shifted[a].scale(inv[b])
    # principal coefficient of 1/(x-pole)^{order-m} is series[m]
    out = []
    for m in range(order):
        k = order - m
        if not series[m].is_zero():
            out.append((k, series[m]))
    return out


RX_ZERO = RatXi(PP_ZERO, 0, 0)
RX_ONE = RatXi(PP_ONE, 0, 0)


def ratxi_partial_fractions(f: RatXi):
    """Module-level alias matching the operation map."""
    return f.partial_fractions()
