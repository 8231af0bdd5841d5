"""Fully numeric dual route for the case engine.

The exact pipeline is rebuilt with explicit 4x4 gamma matrices, finite
differences for the collar jets, Cauchy-contour evaluation of the
positive-frequency projection and of covariable derivatives, adaptive
quadrature for the line integral, and a Gauss-Legendre x uniform product
rule on the unit sphere.  The only shared ingredient is the published symbol
catalog itself.

Everything is batched: a whole list of parameter assignments is evaluated in
one pass, with tensors shaped (params, sphere nodes, contour nodes, 4, 4).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad_vec

# gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij
_S1 = np.array([[0, 1], [1, 0]], dtype=complex)
_S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_S3 = np.array([[1, 0], [0, -1]], dtype=complex)
_E2 = np.eye(2, dtype=complex)
GAMMA = [1j * np.kron(_S1, _E2), 1j * np.kron(_S2, _E2),
         1j * np.kron(_S3, _S1), 1j * np.kron(_S3, _S2)]
ID4 = np.eye(4, dtype=complex)

PARAM_NAMES = (["hp"] + [f"v{j}" for j in range(1, 5)] + [f"w{j}" for j in range(1, 5)]
               + [f"dv{j}" for j in range(1, 5)] + [f"dw{j}" for j in range(1, 5)]
               + [f"A{j}{k}" for j in range(1, 5) for k in range(1, 5)])

_FD_STEP = 1e-3


def random_parameters(rng: np.random.Generator, scale: int = 6) -> Dict[str, Fraction]:
    """Small random rationals for every scalar the cases can mention."""
    out = {}
    for name in PARAM_NAMES:
        num = int(rng.integers(-scale, scale + 1))
        den = int(rng.integers(1, scale + 1))
        out[name] = Fraction(num, den)
    return out


def _mats(scalars: np.ndarray, mat: np.ndarray) -> np.ndarray:
    return scalars[..., None, None] * mat


class BatchContext:
    """Numeric symbol evaluators over a batch of parameter assignments.

    Tensor convention: parameters broadcast on axis 0, sphere nodes on
    axis 1, covariable (contour) nodes on axis 2.
    """

    def __init__(self, params: Sequence[Dict[str, Fraction]],
                 convention: str = "consistent"):
        if convention not in ("consistent", "reference"):
            raise ValueError(f"unknown convention {convention!r}")
        self.convention = convention
        self.P = len(params)
        self.par = {name: np.array([float(p[name]) for p in params])[:, None, None]
                    for name in PARAM_NAMES}

    # scalar fields ------------------------------------------------------
    def _h(self, xn: float) -> np.ndarray:
        return 1.0 + self.par["hp"] * xn

    def _v(self, j: int, xn: float) -> np.ndarray:
        return self.par[f"v{j}"] + self.par[f"dv{j}"] * xn

    def _w(self, k: int, xn: float) -> np.ndarray:
        return self.par[f"w{k}"] + self.par[f"dw{k}"] * xn

    # matrix fields; xi has shape (S, 3), zeta shape (C,) -----------------
    def c_xi_prime(self, xi, xn: float) -> np.ndarray:
        sqh = np.sqrt(self._h(xn))
        acc = sum(_mats(xi[None, :, None, j], GAMMA[j]) for j in range(3))
        return sqh[..., None, None] * acc

    def c_xi(self, xi, zeta, xn: float) -> np.ndarray:
        return self.c_xi_prime(xi, xn) + _mats(np.broadcast_to(
            zeta[None, None, :], self._shape(xi, zeta)), GAMMA[3])

    def _shape(self, xi, zeta):
        return (self.P, xi.shape[0], zeta.shape[0])

    def norm_sq(self, xi, zeta, xn: float) -> np.ndarray:
        dot = np.sum(xi * xi, axis=1)[None, :, None]
        return self._h(xn) * dot + zeta[None, None, :] ** 2

    def c_w(self, xi, zeta, xn: float) -> np.ndarray:
        shape = self._shape(xi, zeta)
        acc = sum(_mats(np.broadcast_to(self._w(k, xn), shape), GAMMA[k - 1])
                  for k in range(1, 5))
        return acc

    def sv(self, xi, zeta, xn: float) -> np.ndarray:
        tang = sum(self._v(j, xn) * xi[None, :, None, j - 1] for j in range(1, 4))
        return 1j * (tang + self._v(4, xn) * zeta[None, None, :])

    def spin_connection(self, xi, zeta) -> np.ndarray:
        shape = self._shape(xi, zeta)
        if self.convention == "reference":
            return np.zeros(shape + (4, 4), dtype=complex)
        acc = sum(_mats(np.broadcast_to(0.25 * self.par["hp"] * self.par[f"v{j}"], shape),
                        GAMMA[j - 1] @ GAMMA[3]) for j in range(1, 4))
        return acc

    def sigma0_D(self, xi, zeta) -> np.ndarray:
        shape = self._shape(xi, zeta)
        return _mats(np.broadcast_to(-0.75 * self.par["hp"], shape), GAMMA[3])

    # inverse symbols -------------------------------------------------------
    def q_m1(self, xi, zeta, xn: float) -> np.ndarray:
        return 1j * self.c_xi(xi, zeta, xn) / self.norm_sq(xi, zeta, xn)[..., None, None]

    def _dxn4(self, f, h: float = _FD_STEP) -> np.ndarray:
        return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h)

    def q_m2(self, xi, zeta) -> np.ndarray:
        q1 = self.q_m1(xi, zeta, 0.0)
        dq1 = self._dxn4(lambda t: self.q_m1(xi, zeta, t))
        g4 = np.broadcast_to(GAMMA[3], q1.shape)
        return -q1 @ (self.sigma0_D(xi, zeta) @ q1 + g4 @ dq1)

    def inv_sq(self, xi, zeta, xn: float) -> np.ndarray:
        return _mats(1.0 / self.norm_sq(xi, zeta, xn), ID4)

    def sig_m3_D2(self, xi, zeta) -> np.ndarray:
        if self.convention == "reference":
            hp = self.par["hp"]
            nsq = self.norm_sq(xi, zeta, 0.0)
            L = np.sum(xi * xi, axis=1)[None, :, None]
            biv = sum(_mats(np.broadcast_to(xi[None, :, None, k], nsq.shape),
                            GAMMA[k] @ GAMMA[3]) for k in range(3))
            z = zeta[None, None, :]
            return (-1j / nsq ** 2)[..., None, None] * (
                -0.5 * hp[..., None, None] * biv
                + _mats(np.broadcast_to(2.5 * hp * z, nsq.shape), ID4)) \
                - _mats(2j * hp * z * L / nsq ** 3, ID4)
        q1 = self.q_m1(xi, zeta, 0.0)
        q2 = self.q_m2(xi, zeta)
        eps = _FD_STEP
        dq1_xin = (self.q_m1(xi, zeta - 2 * eps, 0.0) - 8 * self.q_m1(xi, zeta - eps, 0.0)
                   + 8 * self.q_m1(xi, zeta + eps, 0.0)
                   - self.q_m1(xi, zeta + 2 * eps, 0.0)) / (12 * eps)
        dq1_xn = self._dxn4(lambda t: self.q_m1(xi, zeta, t))
        return q1 @ q2 + q2 @ q1 + dq1_xin @ (-1j * dq1_xn)

    # operator components ----------------------------------------------------
    def grad_prefix(self, xi, zeta, xn: float) -> np.ndarray:
        cw = self.c_w(xi, zeta, xn)
        shape = self._shape(xi, zeta)
        out = np.zeros(shape + (4, 4), dtype=complex)
        for j in range(1, 5):
            col = sum(_mats(np.broadcast_to(self.par[f"A{j}{k}"], shape), GAMMA[k - 1])
                      for k in range(1, 5))
            out += cw @ (np.broadcast_to(GAMMA[j - 1], shape + (4, 4)) @ col)
        return out

    def first_sigma(self, operator_type: str, part: str, order: int,
                    xi, zeta, xn: float) -> np.ndarray:
        if part == "grad":
            if operator_type == "type1" and order == -1:
                return self.grad_prefix(xi, zeta, xn) @ self.q_m1(xi, zeta, xn)
            if operator_type == "type2" and order == -2:
                return self.grad_prefix(xi, zeta, xn) @ self.inv_sq(xi, zeta, xn)
            raise ValueError((operator_type, part, order))
        cw = self.c_w(xi, zeta, xn)
        if operator_type == "type1":
            if order == 0:
                return -2 * (self.sv(xi, zeta, xn)[..., None, None]
                             * (cw @ self.q_m1(xi, zeta, xn)))
            if order == -1:
                h1 = self.sv(xi, zeta, 0.0)[..., None, None] * self.q_m2(xi, zeta)
                h2 = self.spin_connection(xi, zeta) @ self.q_m1(xi, zeta, 0.0)
                dq1 = self._dxn4(lambda t: self.q_m1(xi, zeta, t))
                h3 = self._v(4, 0.0)[..., None, None] * dq1
                return -2 * (cw @ (h1 + h2 + h3))
        else:
            if order == -1:
                return -2 * (self.sv(xi, zeta, xn)[..., None, None]
                             * (cw @ self.inv_sq(xi, zeta, xn)))
            if order == -2:
                h2 = self.sv(xi, zeta, 0.0)[..., None, None] * self.sig_m3_D2(xi, zeta)
                h1 = self.spin_connection(xi, zeta) @ self.inv_sq(xi, zeta, 0.0)
                dinv = self._dxn4(lambda t: self.inv_sq(xi, zeta, t))
                h3 = self._v(4, 0.0)[..., None, None] * dinv
                return -2 * (cw @ (h2 + h1 + h3))
        raise ValueError((operator_type, part, order))

    def second_sigma(self, operator_type: str, order: int, xi, zeta,
                     xn: float) -> np.ndarray:
        if operator_type == "type1":
            if order == -2:
                return self.inv_sq(xi, zeta, xn)
            if order == -3:
                return self.sig_m3_D2(xi, zeta)
        else:
            if order == -1:
                return self.q_m1(xi, zeta, xn)
            if order == -2:
                return self.q_m2(xi, zeta)
        raise ValueError((operator_type, order))


# ---------------------------------------------------------------------------
# Quadrature machinery
# ---------------------------------------------------------------------------

def sphere_nodes(n_theta: int = 5, n_phi: int = 10):
    """Product rule, exact for the polynomial sphere integrands of degree
    <= 2*n_theta - 1 (and trigonometric order n_phi - 1)."""
    x, wx = leggauss(n_theta)
    phis = np.arange(n_phi) * (2 * np.pi / n_phi)
    nodes = []
    weights = []
    for ct, wt in zip(x, wx):
        st = np.sqrt(1.0 - ct * ct)
        for ph in phis:
            nodes.append((st * np.cos(ph), st * np.sin(ph), ct))
            weights.append(wt * (2 * np.pi / n_phi))
    return np.array(nodes), np.array(weights)


_PROJ_NODES = 48
_PROJ_RADIUS = 0.6
_DER_NODES = 40
_DER_RADIUS = 0.5


def _proj_contour():
    theta = np.arange(_PROJ_NODES) * (2 * np.pi / _PROJ_NODES)
    zeta = 1j + _PROJ_RADIUS * np.exp(1j * theta)
    # d zeta / (2 pi i), trapezoid weights folded in
    dz = (_PROJ_RADIUS * np.exp(1j * theta) * 1j) * (2 * np.pi / _PROJ_NODES) / (2j * np.pi)
    return zeta, dz


def _der_contour(center: float):
    theta = np.arange(_DER_NODES) * (2 * np.pi / _DER_NODES)
    zeta = center + _DER_RADIUS * np.exp(1j * theta)
    dz = (_DER_RADIUS * np.exp(1j * theta) * 1j) * (2 * np.pi / _DER_NODES) / (2j * np.pi)
    return zeta, dz


def _factorial(n: int) -> float:
    out = 1.0
    for m in range(2, n + 1):
        out *= m
    return out


class NumericCase:
    """One boundary case, ready to be integrated over the covariable line."""

    def __init__(self, ctx: BatchContext, operator_type: str, part: str,
                 r: int, l: int, k: int = 0, j: int = 0, alpha_total: int = 0):
        self.ctx = ctx
        self.operator_type = operator_type
        self.part = part
        self.r, self.l, self.k, self.j = r, l, k, j
        self.alpha_total = alpha_total
        self.xi, self.w_sphere = sphere_nodes()
        na = alpha_total
        pref = (-1j) ** (na + j + k + 1) / _factorial(j + k + 1)
        self.pref = pref
        if alpha_total == 0:
            self._first_contour = self._build_first_contour()

    def _build_first_contour(self) -> np.ndarray:
        """First-factor symbol (with its x_n-derivatives) on the fixed
        projection contour: shape (P, S, C, 4, 4)."""
        ctx = self.ctx
        zeta, _ = _proj_contour()

        def at_xn(t):
            return ctx.first_sigma(self.operator_type, self.part, self.r,
                                   self.xi, zeta, t)
        if self.j == 0:
            return at_xn(0.0)
        return ctx._dxn4(at_xn)

    def first_factor(self, s: float) -> np.ndarray:
        """d^k_xin of the projection, at the real point s: Cauchy kernel
        against the precomputed contour values."""
        zeta, dz = _proj_contour()
        kern = -dz * _factorial(self.k) / (zeta - s) ** (self.k + 1)
        return np.einsum("c,pscij->psij", kern, self._first_contour)

    def second_factor(self, s: float) -> np.ndarray:
        """d^{j+1}_xin d^k_xn of the second symbol at s, via a local
        derivative contour."""
        ctx = self.ctx
        zeta, dz = _der_contour(s)

        def at_xn(t):
            return ctx.second_sigma(self.operator_type, self.l, self.xi, zeta, t)
        vals = at_xn(0.0) if self.k == 0 else ctx._dxn4(at_xn)
        m = self.j + 1
        kern = dz * _factorial(m) / (zeta - s) ** (m + 1)
        return np.einsum("c,pscij->psij", kern, vals)

    def integrand(self, s: float) -> np.ndarray:
        """Sphere-integrated trace at one covariable point: shape (P,)."""
        if self.alpha_total > 0:
            # the second factor carries a tangential space derivative, which
            # vanishes identically at the base point
            return np.zeros(self.ctx.P)
        f1 = self.first_factor(s)
        f2 = self.second_factor(s)
        tr = np.einsum("psij,psji->ps", f1, f2)
        vals = self.pref * np.einsum("s,ps->p", self.w_sphere, tr)
        return np.stack([vals.real, vals.imag], axis=-1).reshape(-1)

    def line_integral(self, tail_bound: float = 1e-8, rel_tol: float = 3e-9
                      ) -> np.ndarray:
        """Adaptive quadrature over [-R, R]; R set so the O(s^-2) tail is
        below tail_bound relative to the value scale.  The tail segments are
        integrated under u = 1/s, which maps them to short smooth intervals."""
        if self.alpha_total > 0:
            return np.zeros(self.ctx.P)
        rough, _ = quad_vec(self.integrand, -30.0, 30.0, epsrel=1e-3)
        scale = max(float(np.max(np.abs(rough))), 1e-3)
        c2 = max(float(np.max(np.abs(self.integrand(1e3)))),
                 float(np.max(np.abs(self.integrand(-1e3))))) * 1e6
        R = max(1e6, 2.0 * c2 / (tail_bound * scale))
        center, _err = quad_vec(self.integrand, -30.0, 30.0,
                                epsrel=rel_tol, epsabs=1e-12)

        def tail(u):
            s = 1.0 / u
            return self.integrand(s) * s * s
        up, _err = quad_vec(tail, 1.0 / R, 1.0 / 30.0, epsrel=rel_tol, epsabs=1e-12)
        down, _err = quad_vec(tail, -1.0 / 30.0, -1.0 / R, epsrel=rel_tol,
                              epsabs=1e-12)
        out = (center + up + down).reshape(self.ctx.P, 2)
        assert np.all(np.abs(out[:, 1]) <= 1e-6 * np.maximum(1.0, np.abs(out[:, 0])))
        return out[:, 0]


def numeric_case_values(params: List[Dict[str, Fraction]], operator_type: str,
                        part: str, r: int, l: int, k: int = 0, j: int = 0,
                        alpha_total: int = 0, convention: str = "consistent"
                        ) -> np.ndarray:
    """Numeric value of one boundary case for every parameter assignment."""
    ctx = BatchContext(params, convention)
    case = NumericCase(ctx, operator_type, part, r, l, k, j, alpha_total)
    return case.line_integral()


# ---------------------------------------------------------------------------
# Small cross-check helpers used by the test suite
# ---------------------------------------------------------------------------

def word_matrix(word: int) -> np.ndarray:
    out = ID4.copy()
    for bit in range(4):
        if word & (1 << bit):
            out = out @ GAMMA[bit]
    return out


def _eval_poly(poly, assign, xin_value: complex) -> complex:
    from .ring import REGISTRY
    total = 0 + 0j
    for m, c in poly.terms.items():
        val = float(c.re) + 1j * float(c.im)
        for idx, e in m:
            name = REGISTRY[idx]
            base = xin_value if name == "xin" else complex(Fraction(assign[name]))
            val *= base ** e
        total += val
    return total


def eval_ratxi(r, assign, xin_value: complex) -> complex:
    num = _eval_poly(r.num, assign, xin_value)
    den = (xin_value - 1j) ** r.pole_plus * (xin_value + 1j) ** r.pole_minus
    return num / den


def cliff_to_matrix(elem, assign, xin_value: complex) -> np.ndarray:
    """Numeric matrix of a CliffElem at concrete parameter/covector values."""
    out = np.zeros((4, 4), dtype=complex)
    for word, coeff in elem.terms.items():
        out += eval_ratxi(coeff, assign, xin_value) * word_matrix(word)
    return out


def contour_pi_plus(r, assign, s: float) -> complex:
    """Projection of an exact rational function evaluated by the Cauchy
    contour; dual route for the symbolic principal-part extraction."""
    zeta, dz = _proj_contour()
    vals = np.array([eval_ratxi(r, assign, z) for z in zeta])
    kern = -dz / (zeta - s)
    return complex(np.sum(kern * vals))


def quadrature_line_integral(r, assign, rel_tol: float = 1e-10) -> complex:
    """Adaptive quadrature of an exact RatXi along the real line."""
    def f(s):
        v = eval_ratxi(r, assign, s)
        return np.array([v.real, v.imag])
    val, _ = quad_vec(f, -np.inf, np.inf, epsrel=rel_tol, epsabs=1e-13)
    return complex(val[0], val[1])
