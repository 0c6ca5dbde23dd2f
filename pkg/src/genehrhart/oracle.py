"""Brute-force lattice point enumeration by degree.

Membership is tested against an inequality description of the cone,
never against the triangulation, so this module fails independently of
the series pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from . import linalg
from .linalg import dot
from .polyhedra import ConeInput, cone_description

__all__ = [
    "BudgetExceeded",
    "DegreeSlice",
    "ConeOracle",
    "enumerate_degree_k",
    "weighted_count",
    "weighted_counts",
]

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The candidate scan would exceed the configured point budget."""


@dataclass(frozen=True)
class DegreeSlice:
    k: int
    points: tuple[tuple[int, ...], ...]


class ConeOracle:
    """Precomputed description of ``cone ∩ L`` for repeated slicing."""

    def __init__(self, cone: ConeInput, budget: int = DEFAULT_BUDGET):
        self.cone = cone
        self.budget = budget
        n = cone.ambient_dim
        self.n = n
        if getattr(cone, "inequalities", None) is not None:
            self.equations = []
            self.inequalities = [list(r) for r in cone.inequalities] + linalg.identity(n)
        else:
            self.equations, self.inequalities = cone_description(cone.rays, n)
        self.lattice = None
        if cone.lattice is not None and [list(r) for r in cone.lattice] != linalg.identity(n):
            self.lattice = [list(r) for r in cone.lattice]
        # per-coordinate range of x / deg(x) over the cone
        lo, hi = [], []
        for j in range(n):
            vals = [Fraction(r[j], dot(cone.grading, r)) for r in cone.rays]
            lo.append(min(vals, default=Fraction(0)))
            hi.append(max(vals, default=Fraction(0)))
        self.lo, self.hi = lo, hi
        g = list(cone.grading)
        # enumerate coordinates with zero grading first; solve the last one
        nz = [j for j in range(n) if g[j]]
        if not nz:
            raise ValueError("grading is identically zero")
        last = nz[-1]
        self.order = [j for j in range(n) if j != last] + [last]

    def contains(self, x: Sequence[int]) -> bool:
        if any(dot(e, x) for e in self.equations):
            return False
        if any(dot(a, x) < 0 for a in self.inequalities):
            return False
        if self.lattice is not None:
            c = linalg.solve_rows(self.lattice, x)
            if c is None or any(v.denominator != 1 for v in c):
                return False
        return True

    def slice(self, k: int) -> DegreeSlice:
        if k < 0:
            raise ValueError("degree must be nonnegative")
        n = self.n
        g = self.cone.grading
        order = self.order
        box = [(ceil(k * self.lo[j]), floor(k * self.hi[j])) for j in order]
        gs = [g[j] for j in order]
        # suffix bounds of sum g_j x_j over the box
        smin = [0] * (n + 1)
        smax = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            a, b = box[i]
            smin[i] = smin[i + 1] + min(gs[i] * a, gs[i] * b)
            smax[i] = smax[i + 1] + max(gs[i] * a, gs[i] * b)
        pts = []
        scans = 0
        cur = [0] * n
        glast = gs[-1]
        a_last, b_last = box[-1]

        def rec(i: int, rem: int):
            nonlocal scans
            if i == n - 1:
                scans += 1
                if scans > self.budget:
                    raise BudgetExceeded(
                        f"degree {k} needs more than {self.budget} candidate scans"
                    )
                if rem % glast:
                    return
                v = rem // glast
                if a_last <= v <= b_last:
                    cur[i] = v
                    x = [0] * n
                    for pos, j in enumerate(order):
                        x[j] = cur[pos]
                    if self.contains(x):
                        pts.append(tuple(x))
                return
            a, b = box[i]
            gi = gs[i]
            for v in range(a, b + 1):
                r = rem - gi * v
                if smin[i + 1] <= r <= smax[i + 1]:
                    cur[i] = v
                    rec(i + 1, r)

        if smin[0] <= k <= smax[0]:
            rec(0, k)
        pts.sort()
        return DegreeSlice(k, tuple(pts))

    def weighted_count(self, k: int) -> Fraction:
        f = self.cone.weight
        return sum((f(p) for p in self.slice(k).points), Fraction(0))


def enumerate_degree_k(cone: ConeInput, k: int, budget: int = DEFAULT_BUDGET) -> DegreeSlice:
    """All points of ``cone ∩ L`` of degree ``k``."""
    return ConeOracle(cone, budget).slice(k)


def weighted_count(cone: ConeInput, k: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """``sum f(x)`` over the points of degree ``k``."""
    return ConeOracle(cone, budget).weighted_count(k)


def weighted_counts(cone: ConeInput, kmax: int, budget: int = DEFAULT_BUDGET) -> list[Fraction]:
    """Weighted counts for degrees ``0..kmax``."""
    o = ConeOracle(cone, budget)
    return [o.weighted_count(k) for k in range(kmax + 1)]
