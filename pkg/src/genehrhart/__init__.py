"""Weighted Ehrhart series, quasipolynomials and exact polytope integrals."""

from .combinat import binomial, power_numerator, stirling_rep
from .ehrhart import EhrhartResult, generalized_ehrhart_series, virtual_multiplicity
from .genseries import (
    DenomClass,
    QuasiPolynomial,
    RatFn,
    accumulate,
    eliminate_variables,
    monomial_series,
    quasipolynomial,
)
from .integrate import integrate_monomial, integrate_over_polytope
from .mpoly import MultiPoly, homogeneous_component, parse_polynomial, substitute_affine
from .oracle import BudgetExceeded, enumerate_degree_k, weighted_count, weighted_counts
from .polyhedra import (
    ConeInput,
    GeometryError,
    extreme_rays_from_inequalities,
    half_open_decomposition,
    stanley_decomposition,
    triangulate,
)

__version__ = "0.1.0"

__all__ = [
    "binomial", "power_numerator", "stirling_rep",
    "EhrhartResult", "generalized_ehrhart_series", "virtual_multiplicity",
    "DenomClass", "QuasiPolynomial", "RatFn", "accumulate", "eliminate_variables",
    "monomial_series", "quasipolynomial",
    "integrate_monomial", "integrate_over_polytope",
    "MultiPoly", "homogeneous_component", "parse_polynomial", "substitute_affine",
    "BudgetExceeded", "enumerate_degree_k", "weighted_count", "weighted_counts",
    "ConeInput", "GeometryError", "extreme_rays_from_inequalities",
    "half_open_decomposition", "stanley_decomposition", "triangulate",
]
