"""Exact symbolic engine for the boundary terms of noncommutative-residue
functionals of Dirac-operator pairings on a four-dimensional spin collar.

The package splits along the computation:

  ring      exact scalars, sparse polynomials, rational functions of the
            normal covariable with poles only at -+i
  clifford  word rewriting over the boundary frame and the normalized trace
  symbols   the boundary symbol catalog, collar jets, composition
  residue   positive-frequency projection, line integrals, sphere moments
  boundary  the case engine and the reference tables
  report    reconciliation documents, theorem assembly, JSON/markdown
  oracle    the fully numeric dual route (gamma matrices + quadrature)
"""
from .ring import (GaussianRational, ParamPoly, RatXi, gq_arith, poly_arith,
                   ratxi_partial_fractions)
from .clifford import CliffElem, cliff_mul, cliff_trace, recognize_L
from .symbols import GradedSymbol, catalog, compose, verify_decomposition
from .residue import pi_plus, integrate_xin, sphere_moment, integrate_sphere
from .boundary import (CaseSpec, CaseResult, enumerate_cases, compute_case,
                       compute_phi_star, total_phi_tilde, reconcile,
                       substitute_geometric)
from .report import RunConfig, einstein_coefficient, theorem_report, run

__version__ = "0.1.0"

__all__ = [
    "GaussianRational", "ParamPoly", "RatXi", "gq_arith", "poly_arith",
    "ratxi_partial_fractions", "CliffElem", "cliff_mul", "cliff_trace",
    "recognize_L", "GradedSymbol", "catalog", "compose", "verify_decomposition",
    "pi_plus", "integrate_xin", "sphere_moment", "integrate_sphere",
    "CaseSpec", "CaseResult", "enumerate_cases", "compute_case",
    "compute_phi_star", "total_phi_tilde", "reconcile", "substitute_geometric",
    "RunConfig", "einstein_coefficient", "theorem_report", "run",
]
