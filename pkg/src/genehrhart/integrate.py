"""Exact integrals of polynomials over ``P = cone(M) ∩ {deg = 1}``.

The measure is the lattice-normalized one on the degree-one hyperplane:
a basic simplex of the degree-zero sublattice has volume ``1/(d-1)!``.
Each triangulation cell contributes ``det/prod(deg v_i)`` times an
integral over the standard simplex, done monomial by monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from . import _kernel
from .mpoly import MultiPoly, homogeneous_component
from .polyhedra import ConeInput, GeometryError, SimplicialCone, prepare, triangulate

__all__ = [
    "IntegrationError",
    "SimplexChart",
    "integrate_monomial",
    "simplex_charts",
    "integrate_over_polytope",
]


class IntegrationError(GeometryError):
    pass


def integrate_monomial(exponents: Sequence[int]) -> Fraction:
    """``m_1!...m_d! / (m_1+...+m_d+d-1)!`` over the standard simplex."""
    d = len(exponents)
    if d < 1:
        raise ValueError("need at least one variable")
    return Fraction(prod(factorial(m) for m in exponents), factorial(sum(exponents) + d - 1))


@dataclass(frozen=True)
class SimplexChart:
    cell: SimplicialCone
    vertices: tuple[tuple[Fraction, ...], ...]
    factor: Fraction


def simplex_charts(cone: ConeInput) -> list[SimplexChart]:
    geo = prepare(cone)
    if geo.rank and geo.grading_gcd != 1:
        raise IntegrationError(
            f"grading has gcd {geo.grading_gcd} on the lattice; it must take the value 1"
        )
    charts = []
    for cell in triangulate(geo):
        verts = tuple(
            tuple(Fraction(x, u) for x in v) for v, u in zip(cell.gens, cell.degrees)
        )
        charts.append(SimplexChart(cell, verts, Fraction(cell.det_abs, prod(cell.degrees))))
    return charts


def _top_factors(cone: ConeInput) -> list[MultiPoly]:
    if cone.weight_factors is not None:
        return [homogeneous_component(f, f.degree()) for f in cone.weight_factors]
    f = cone.weight
    return [homogeneous_component(f, f.degree())]


def integrate_over_polytope(
    cone: ConeInput,
    top_only: bool = True,
    polynomial: MultiPoly | None = None,
) -> Fraction:
    """Integral of the weight over ``P``.

    By default the top homogeneous component of the weight is integrated;
    ``top_only=False`` integrates the full weight and ``polynomial``
    replaces the weight altogether.
    """
    if not cone.rays:
        return Fraction(0)
    if polynomial is not None:
        factors = [polynomial]
    elif top_only:
        factors = _top_factors(cone)
    else:
        factors = list(cone.weight_factors) if cone.weight_factors is not None else [cone.weight]
    if any(f.is_zero() for f in factors):
        return Fraction(0)
    int_factors = [_kernel.integer_form(f.items()) for f in factors]
    maxdeg = sum(max(f.degree(), 0) for f in factors)
    total = Fraction(0)
    for chart in simplex_charts(cone):
        cell = chart.cell
        packer = _kernel.Packer(cell.dim, maxdeg)
        forms = _kernel.linear_forms(packer, cell.gens, [0] * cone.ambient_dim)
        # substitute v_i, then rescale y_i by 1/deg v_i
        g, den = _kernel.substitute_product(int_factors, forms)
        acc = Fraction(0)
        for key, c in g.items():
            e = packer.unpack(key)
            scale = prod(u ** m for u, m in zip(cell.degrees, e))
            acc += Fraction(c, scale) * integrate_monomial(e)
        total += chart.factor * acc / den
    return total
