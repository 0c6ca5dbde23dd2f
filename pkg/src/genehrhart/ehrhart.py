"""Generalized Ehrhart series of a graded cone with a polynomial weight."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Sequence

from . import _kernel
from .genseries import DenomClass, QuasiPolynomial, RatFn, accumulate, quasipolynomial
from .polyhedra import (
    ConeInput,
    GeometryError,
    SimplicialCone,
    StanleyBlock,
    stanley_decomposition,
)

__all__ = [
    "EhrhartResult",
    "generalized_ehrhart_series",
    "virtual_multiplicity",
]


@dataclass(frozen=True)
class EhrhartResult:
    series: RatFn
    quasi: QuasiPolynomial
    expected_degree: int
    leading: Fraction | None
    vmult: Fraction | None
    rank: int
    grading_gcd: int
    leading_by_residue: tuple[Fraction, ...]
    ncells: int = 0
    nblocks: int = 0


def _weight_factors(cone: ConeInput):
    factors = cone.weight_factors if cone.weight_factors is not None else (cone.weight,)
    return [_kernel.integer_form(f.items()) for f in factors]


def _class_order(cell: SimplicialCone) -> list[int]:
    return sorted(range(cell.dim), key=lambda i: (-cell.degrees[i], i))


def _cell_contribution(cell: SimplicialCone, blocks: Sequence[StanleyBlock], factors, max_degree):
    """Transformed weights of all blocks of one cell, summed in its class."""
    order = _class_order(cell)
    key = tuple(cell.degrees[i] for i in order)
    cls = DenomClass(key, max_degree)
    cols = [cell.gens[i] for i in order]
    for b in blocks:
        forms = _kernel.linear_forms(cls.layout.packer, cols, b.xt)
        g, den = _kernel.substitute_product(factors, forms)
        if g:
            cls.add_packed(cls.layout.canonicalize(g), den, b.shift)
    return cls


def _class_ratfn(cls: DenomClass, target) -> RatFn:
    return cls.ratfn(target)


def _map(fn, args, threads: int):
    if threads <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, *zip(*args)))


def generalized_ehrhart_series(
    cone: ConeInput, threads: int = 1, group_classes: bool = True
) -> EhrhartResult:
    """``sum_{x in M} f(x) t^deg(x)`` with its quasipolynomial.

    ``threads > 1`` distributes cells and denominator classes over worker
    processes; the result does not depend on it. ``group_classes=False``
    eliminates every cell separately instead of per denominator class.
    """
    if not cone.rays:
        raise GeometryError("cone has no rays")
    if threads is None or threads < 1:
        threads = os.cpu_count() or 1
    geo, cells, blocks = stanley_decomposition(cone)
    d = geo.rank
    f = cone.weight
    deg_f = max(f.degree(), 0)
    D = deg_f + d
    ell = lcm(*(u for c in cells for u in c.degrees))
    factors = _weight_factors(cone)

    contribs = _map(
        _cell_contribution, [(c, b, factors, deg_f) for c, b in zip(cells, blocks)], threads
    )
    if group_classes:
        classes: dict[tuple[int, ...], DenomClass] = {}
        for cls in contribs:
            if cls.key in classes:
                classes[cls.key].merge(cls)
            else:
                classes[cls.key] = cls
        units = [classes[k] for k in sorted(classes)]
    else:
        units = list(contribs)
    parts = _map(_class_ratfn, [(u, (ell, D)) for u in units], threads)
    series = accumulate(parts, ell, D)
    quasi = quasipolynomial(series)
    ed = D - 1
    tops = tuple(quasi.top_coefficients(ed))
    if all(t == tops[0] for t in tops):
        leading = tops[0]
        vmult = factorial(ed) * leading
    else:
        leading = vmult = None
    return EhrhartResult(
        series=series,
        quasi=quasi,
        expected_degree=ed,
        leading=leading,
        vmult=vmult,
        rank=d,
        grading_gcd=geo.grading_gcd,
        leading_by_residue=tops,
        ncells=len(cells),
        nblocks=sum(len(b) for b in blocks),
    )


def virtual_multiplicity(cone: ConeInput, threads: int = 1):
    """``(expected degree, virtual leading coefficient, virtual multiplicity)``."""
    r = generalized_ehrhart_series(cone, threads=threads)
    return r.expected_degree, r.leading, r.vmult
