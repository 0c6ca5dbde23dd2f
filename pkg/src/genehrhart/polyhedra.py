"""Cone geometry: ray conversion, triangulation and the Stanley decomposition.

Everything below works in coordinates with respect to a basis of the
saturated lattice ``L ∩ RM`` so that rank-deficient cones are handled
like full-dimensional ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Sequence

from . import linalg
from .linalg import dot, primitive
from .mpoly import MultiPoly

__all__ = [
    "GeometryError",
    "ConeInput",
    "ConeGeometry",
    "SimplicialCone",
    "StanleyBlock",
    "lattice_normal_form",
    "extreme_rays_from_inequalities",
    "cone_description",
    "prepare",
    "triangulate",
    "half_open_decomposition",
    "fundamental_points",
    "stanley_blocks",
    "stanley_decomposition",
]


class GeometryError(ValueError):
    """Invalid cone input: not pointed, bad grading, rays outside the lattice."""


Vector = tuple[int, ...]


@dataclass(frozen=True)
class ConeInput:
    """A graded cone ``M = cone(rays) ∩ L`` with a weight polynomial.

    ``lattice`` holds basis rows of ``L`` (``None`` means ``Z^n``).
    ``weight_factors`` optionally gives factors whose product is
    ``weight``; the series pipeline substitutes them one by one.
    ``inequalities`` records the H-description ``{x >= 0, A x >= 0}`` when
    the rays were computed from one.
    """

    ambient_dim: int
    rays: tuple[Vector, ...]
    grading: Vector
    weight: MultiPoly | None = None
    lattice: tuple[Vector, ...] | None = None
    weight_factors: tuple[MultiPoly, ...] | None = None
    inequalities: tuple[Vector, ...] | None = None

    @classmethod
    def from_inequalities(cls, ambient_dim: int, inequalities, grading, **kw) -> "ConeInput":
        """Cone ``{x : x >= 0, inequalities . x >= 0}``."""
        ineqs = tuple(tuple(int(x) for x in r) for r in inequalities)
        rays = extreme_rays_from_inequalities(ineqs, ambient_dim)
        return cls(ambient_dim, tuple(rays), grading, inequalities=ineqs, **kw)

    def __post_init__(self):
        n = self.ambient_dim
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "grading", tuple(int(x) for x in self.grading))
        if self.lattice is not None:
            object.__setattr__(
                self, "lattice", tuple(tuple(int(x) for x in r) for r in self.lattice)
            )
        if self.weight is None:
            if self.weight_factors is not None:
                w = MultiPoly.constant(n, 1)
                for fac in self.weight_factors:
                    w = w * fac
            else:
                w = MultiPoly.constant(n, 1)
            object.__setattr__(self, "weight", w)
        if self.weight_factors is not None:
            object.__setattr__(self, "weight_factors", tuple(self.weight_factors))
        if len(self.grading) != n:
            raise GeometryError("grading must have ambient_dim entries")
        if self.weight.nvars != n:
            raise GeometryError("weight must be a polynomial in ambient_dim variables")
        for r in self.rays:
            if len(r) != n:
                raise GeometryError(f"ray {r} has wrong length")
            if not any(r):
                raise GeometryError("zero ray")
            if dot(self.grading, r) < 1:
                raise GeometryError(f"grading is not positive on ray {r}")
        if self.lattice is not None:
            for b in self.lattice:
                if len(b) != n:
                    raise GeometryError("lattice basis vectors must have ambient_dim entries")
            if linalg.rank(self.lattice) != len(self.lattice):
                raise GeometryError("lattice basis is not linearly independent")

        if self.inequalities is not None:
            object.__setattr__(
                self, "inequalities", tuple(tuple(int(x) for x in r) for r in self.inequalities)
            )

    def with_weight(self, weight: MultiPoly, factors=None) -> "ConeInput":
        return replace(self, weight=weight, weight_factors=factors)


@dataclass(frozen=True)
class ConeGeometry:
    """``ConeInput`` in coordinates of a basis of ``L ∩ RM``."""

    basis: tuple[Vector, ...]          # rows, ambient vectors
    basis_degrees: Vector              # grading on the basis rows
    ray_coords: tuple[Vector, ...]     # primitive in L, deduplicated, input order
    rank: int
    grading_gcd: int

    def to_ambient(self, c: Sequence[int]) -> Vector:
        return tuple(linalg.vecmat(c, self.basis)) if self.basis else ()

    def degree(self, c: Sequence[int]) -> int:
        return dot(c, self.basis_degrees)


@dataclass(frozen=True)
class SimplicialCone:
    """One cell of the triangulation.

    ``coords`` are the generators in lattice coordinates, ``gens`` the same
    vectors in ambient coordinates. Facet ``i`` lies opposite ``gens[i]``;
    ``normals[i]`` is its inward normal in lattice coordinates.
    """

    gens: tuple[Vector, ...]
    coords: tuple[Vector, ...]
    det_abs: int
    degrees: tuple[int, ...]
    normals: tuple[Vector, ...]
    excluded: frozenset[int] = frozenset()

    @property
    def dim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class StanleyBlock:
    """The shifted free monoid ``xt + M_sigma``."""

    xt: Vector                 # ambient
    xt_coords: Vector          # lattice coordinates
    alpha: tuple[Fraction, ...]
    cell: SimplicialCone = field(repr=False)
    shift: int = 0             # deg xt


def lattice_normal_form(A: Sequence[Sequence[int]]):
    """Smith normal form ``(D, U, V)`` with ``U A V = D``."""
    return linalg.smith_normal_form(A)


# ---------------------------------------------------------------------------
# double description


def _double_description(A: Sequence[Sequence[int]]) -> list[Vector]:
    """Extreme rays of the pointed cone ``{x : A x >= 0}``."""
    A = [list(r) for r in A]
    if not A:
        raise GeometryError("cone is not pointed (no constraints)")
    n = len(A[0])
    start = linalg.independent_rows(A)
    if len(start) < n:
        raise GeometryError("cone is not pointed: it contains a line")
    start = start[:n]
    Binv = linalg.inverse([A[i] for i in start])
    rays: list[Vector] = []
    tight: list[frozenset[int]] = []
    for j in range(n):
        col = [Binv[i][j] for i in range(n)]
        m = lcm(*(x.denominator for x in col))
        rays.append(primitive([int(x * m) for x in col]))
        tight.append(frozenset(start[k] for k in range(n) if k != j))
    for idx in range(len(A)):
        if idx in start:
            continue
        a = A[idx]
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_tight = [tight[i] for i in pos] + [tight[i] | {idx} for i in zero]
        for p in pos if n > 1 else ():
            for q in neg:
                common = tight[p] & tight[q]
                if len(common) < n - 2:
                    continue
                if n > 2 and linalg.rank([A[k] for k in common]) != n - 2:
                    continue
                if n == 2 and common and linalg.rank([A[k] for k in common]) != 0:
                    continue
                r = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(primitive(r))
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight
        if not rays:
            break
    # drop duplicates, keep deterministic order
    seen = {}
    for r in rays:
        seen.setdefault(r, None)
    return list(seen)


def _ray_sort_key(r: Vector):
    return (sum(abs(x) for x in r), tuple(-x for x in r))


def extreme_rays_from_inequalities(
    ineqs: Sequence[Sequence[int]], n: int | None = None
) -> list[Vector]:
    """Extreme rays of ``{x : ineqs·x >= 0, x >= 0}`` as primitive integer vectors."""
    ineqs = [list(r) for r in ineqs]
    if n is None:
        if not ineqs:
            raise ValueError("dimension needed when there are no inequalities")
        n = len(ineqs[0])
    if any(len(r) != n for r in ineqs):
        raise GeometryError("inequality rows must have n entries")
    A = ineqs + linalg.identity(n)
    return sorted(_double_description(A), key=_ray_sort_key)


def cone_description(rays: Sequence[Sequence[int]], n: int):
    """Return ``(equations, inequalities)`` describing ``cone(rays)``.

    ``x`` is in the cone iff ``e·x == 0`` for all equations and
    ``a·x >= 0`` for all inequalities (the facet normals).
    """
    rays = [list(r) for r in rays]
    if not rays:
        return linalg.identity(n), []
    equations = linalg.integral_nullspace(rays, n)
    W = linalg.saturation_basis(rays)
    d = len(W)
    coords = []
    for r in rays:
        c = linalg.solve_rows(W, r)
        m = lcm(*(x.denominator for x in c))
        coords.append([int(x * m) for x in c])
    if d == 1:
        dual = [(1,)] if coords[0][0] > 0 else [(-1,)]
        if any(c[0] * dual[0][0] < 0 for c in coords):
            raise GeometryError("cone is not pointed: it contains a line")
    else:
        dual = _double_description(coords)
    # lift coordinate functionals a to ambient phi with W phi = a
    WWt = linalg.matmul(W, linalg.transpose(W))
    WWt_inv = linalg.inverse(WWt)
    ineqs = []
    for a in dual:
        y = [sum(WWt_inv[i][j] * a[j] for j in range(d)) for i in range(d)]
        phi = linalg.vecmat(y, W)
        m = lcm(*(Fraction(x).denominator for x in phi))
        ineqs.append(list(primitive([int(x * m) for x in phi])))
    return equations, ineqs


# ---------------------------------------------------------------------------
# preparation and triangulation


def prepare(cone: ConeInput) -> ConeGeometry:
    """Compute a basis of ``L ∩ RM`` and lattice coordinates of the rays."""
    n = cone.ambient_dim
    lat = [list(b) for b in cone.lattice] if cone.lattice is not None else linalg.identity(n)
    if not cone.rays:
        return ConeGeometry((), (), (), 0, 1)
    # rays in L-coordinates (rational if a ray is not itself in L)
    lcoords = []
    for r in cone.rays:
        c = linalg.solve_rows(lat, r)
        if c is None:
            raise GeometryError(f"ray {r} is not in the span of the lattice")
        m = lcm(*(x.denominator for x in c))
        lcoords.append([int(x * m) for x in c])
    sat = linalg.saturation_basis(lcoords)      # basis in L-coordinates
    basis = [tuple(linalg.vecmat(s, lat)) for s in sat]
    d = len(basis)
    bdeg = tuple(dot(cone.grading, b) for b in basis)
    coords = []
    seen = set()
    for r in cone.rays:
        c = linalg.solve_rows(basis, r)
        m = lcm(*(x.denominator for x in c))
        c = primitive([int(x * m) for x in c])
        if c in seen:
            continue
        seen.add(c)
        coords.append(c)
    g = 0
    for x in bdeg:
        g = gcd(g, x)
    return ConeGeometry(tuple(basis), bdeg, tuple(coords), d, g)


def _oriented_normal(facet: Sequence[Vector], opposite: Vector) -> Vector:
    nrm = linalg.normal_vector(facet)
    if dot(nrm, opposite) < 0:
        nrm = [-x for x in nrm]
    return tuple(nrm)


def simplicial_cone(geo: ConeGeometry, coords: Sequence[Vector]) -> SimplicialCone:
    """Cell spanned by independent generators given in lattice coordinates."""
    coords = tuple(tuple(c) for c in coords)
    d = len(coords)
    normals = tuple(
        _oriented_normal([coords[k] for k in range(d) if k != i], coords[i]) for i in range(d)
    )
    return SimplicialCone(
        gens=tuple(geo.to_ambient(c) for c in coords),
        coords=coords,
        det_abs=abs(linalg.det(coords)),
        degrees=tuple(geo.degree(c) for c in coords),
        normals=normals,
    )


def triangulate(cone: ConeInput | ConeGeometry) -> list[SimplicialCone]:
    """Placing triangulation of the cone in the input ray order."""
    geo = cone if isinstance(cone, ConeGeometry) else prepare(cone)
    pts = list(geo.ray_coords)
    d = geo.rank
    if not pts:
        return []
    init = linalg.independent_rows(pts)[:d]
    cells: list[tuple[int, ...]] = [tuple(init)]
    boundary: dict[frozenset[int], Vector] = {}
    for i in init:
        facet = frozenset(init) - {i}
        boundary[facet] = _oriented_normal([pts[k] for k in sorted(facet)], pts[i])
    for idx in range(len(pts)):
        if idx in init:
            continue
        r = pts[idx]
        visible = [F for F, nrm in boundary.items() if dot(nrm, r) < 0]
        if not visible:
            continue
        for F in visible:
            del boundary[F]
        for F in visible:
            cells.append(tuple(sorted(F | {idx})))
            for j in sorted(F):
                G = (F - {j}) | {idx}
                if G in boundary:
                    del boundary[G]
                else:
                    boundary[G] = _oriented_normal([pts[k] for k in sorted(G)], pts[j])
    return [simplicial_cone(geo, [pts[k] for k in c]) for c in cells]


def _lex_sign(values: Sequence[int]) -> int:
    for v in values:
        if v:
            return 1 if v > 0 else -1
    return 0


def half_open_decomposition(cells: Sequence[SimplicialCone]) -> list[SimplicialCone]:
    """Choose excluded facets so that the half-open cells partition the cone.

    Uses the order vector ``O`` = sum of the first cell's generators,
    perturbed by ``eps*e_1 + eps^2*e_2 + ...``; facet ``i`` of a cell is
    excluded when ``O`` lies strictly beyond it.
    """
    if not cells:
        return []
    first = cells[0].coords
    O = [sum(c[k] for c in first) for k in range(len(first[0]))]
    out = []
    for cell in cells:
        excl = frozenset(
            i for i, nrm in enumerate(cell.normals) if _lex_sign([dot(nrm, O), *nrm]) < 0
        )
        out.append(replace(cell, excluded=excl))
    return out


def fundamental_points(cell: SimplicialCone, geo: ConeGeometry | None = None):
    """Lattice points ``x = sum alpha_i v_i`` with all ``alpha_i`` in ``[0, 1)``.

    Returns a sorted list of ``(x_coords, alpha)`` pairs; ``x_coords`` are
    lattice coordinates (map with ``geo.to_ambient``).
    """
    V = [list(c) for c in cell.coords]
    d = len(V)
    D, U, W = linalg.smith_normal_form(V)
    Winv = linalg.integer_inverse(W)
    Vinv = linalg.inverse(V)
    diag = [D[i][i] for i in range(d)]
    pts = []
    for c in product(*(range(x) for x in diag)):
        x = linalg.vecmat(c, Winv)
        alpha = [sum(Fraction(x[i]) * Vinv[i][j] for i in range(d)) for j in range(d)]
        alpha = tuple(a - (a.numerator // a.denominator) for a in alpha)
        xc = tuple(
            int(sum(alpha[i] * V[i][j] for i in range(d))) for j in range(d)
        )
        pts.append((xc, alpha))
    pts.sort(key=lambda p: p[1])
    return pts


def stanley_blocks(cell: SimplicialCone, points, geo: ConeGeometry) -> list[StanleyBlock]:
    """Blocks ``x + eps(x) + M_sigma`` for the fundamental points of ``cell``."""
    blocks = []
    for xc, alpha in points:
        xt = list(xc)
        for i in cell.excluded:
            if alpha[i] == 0:
                xt = [a + b for a, b in zip(xt, cell.coords[i])]
        xt = tuple(xt)
        blocks.append(
            StanleyBlock(
                xt=geo.to_ambient(xt),
                xt_coords=xt,
                alpha=alpha,
                cell=cell,
                shift=geo.degree(xt),
            )
        )
    return blocks


def stanley_decomposition(cone: ConeInput):
    """Return ``(geometry, cells, blocks_per_cell)`` for the whole cone."""
    geo = prepare(cone)
    cells = half_open_decomposition(triangulate(geo))
    blocks = [stanley_blocks(c, fundamental_points(c, geo), geo) for c in cells]
    return geo, cells, blocks


def block_contains(block: StanleyBlock, point_coords: Sequence[int]) -> bool:
    """Whether a lattice point (in lattice coordinates) lies in the block."""
    V = block.cell.coords
    diff = [a - b for a, b in zip(point_coords, block.xt_coords)]
    c = linalg.solve_rows(V, diff)
    return c is not None and all(x.denominator == 1 and x >= 0 for x in c)
