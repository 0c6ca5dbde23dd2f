from fractions import Fraction
from math import factorial

import pytest

from genehrhart.ehrhart import generalized_ehrhart_series, virtual_multiplicity
from genehrhart.genseries import RatFn
from genehrhart.mpoly import MultiPoly, homogeneous_component, parse_polynomial
from genehrhart.oracle import weighted_counts
from genehrhart.polyhedra import ConeInput, GeometryError, prepare

from _cases import random_suite

F = Fraction


def cone(rays, grading, poly="1", **kw):
    n = len(grading)
    return ConeInput(n, rays, grading, weight=parse_polynomial(poly, n), **kw)


def test_orthant_constant_weight():
    r = generalized_ehrhart_series(cone([(1, 0), (0, 1)], (1, 1)))
    assert r.series == RatFn([1], [(1, 2)])
    assert r.quasi.components == ((1, 1),)


def test_orthant_x1x2():
    r = generalized_ehrhart_series(cone([(1, 0), (0, 1)], (1, 1), "x1*x2"))
    assert r.series == RatFn([0, 0, 1], [(1, 4)])
    assert r.quasi.components == ((0, F(-1, 6), 0, F(1, 6)),)
    assert (r.expected_degree, r.leading, r.vmult) == (3, F(1, 6), 1)


def test_wedge():
    r = generalized_ehrhart_series(cone([(1, 0), (1, 2)], (1, 0)))
    assert r.quasi.components == ((1, 2),)
    assert r.leading == 2


def test_grading_two_residues_disagree():
    r = generalized_ehrhart_series(cone([(1,)], (2,), "x1"))
    assert r.series == RatFn([0, 0, 1], [(2, 2)])
    assert r.quasi.period == 2
    assert r.quasi.components == ((0, F(1, 2)), (0, 0))
    assert r.expected_degree == 1
    assert r.leading is None and r.vmult is None
    assert r.leading_by_residue == (F(1, 2), 0)
    assert r.grading_gcd == 2


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_unit_simplex(d):
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    assert virtual_multiplicity(cone(rays, (1,) * d)) == (d - 1, F(1, factorial(d - 1)), 1)


def test_zero_weight():
    r = generalized_ehrhart_series(cone([(1, 0), (1, 1)], (1, 0), "0"))
    assert r.series.is_zero()
    assert all(r.quasi(k) == 0 for k in range(6))
    assert r.vmult == 0


def test_empty_cone_rejected():
    with pytest.raises(GeometryError):
        generalized_ehrhart_series(cone([], (1, 1)))


def test_sublattice_matches_oracle():
    c = cone([(2, 0), (1, 1), (0, 2)], (1, 1), "x1^2 + x2", lattice=[(1, 1), (0, 2)])
    r = generalized_ehrhart_series(c)
    assert r.series.series(20) == weighted_counts(c, 19)


def test_rank_deficient_matches_oracle():
    c = cone([(1, 1, 0), (0, 1, 1), (1, 2, 1), (2, 3, 1)], (1, 0, 1), "x1*x3 + 2*x2")
    r = generalized_ehrhart_series(c)
    assert r.rank == 2
    assert r.series.series(20) == weighted_counts(c, 19)


@pytest.mark.parametrize("c", random_suite(10, start=600), ids=lambda c: str(c.rays))
def test_random_inputs_match_oracle(c):
    r = generalized_ehrhart_series(c)
    assert r.series.has_negative_degree()
    assert r.series.series(20) == weighted_counts(c, 19)
    assert [r.quasi(k) for k in range(20)] == r.series.series(20)


@pytest.mark.parametrize("seed", range(6))
def test_linearity(seed):
    c = random_suite(1, start=700 + seed)[0]
    g = MultiPoly(c.ambient_dim, {(1,) + (0,) * (c.ambient_dim - 1): 3, (0,) * c.ambient_dim: 1})
    rf = generalized_ehrhart_series(c.with_weight(c.weight)).series
    rg = generalized_ehrhart_series(c.with_weight(g)).series
    rs = generalized_ehrhart_series(c.with_weight(c.weight + g)).series
    assert rs == rf + rg


@pytest.mark.parametrize("c", random_suite(10, start=800), ids=lambda c: str(c.rays))
def test_top_coefficient_only_depends_on_top_component(c):
    f = c.weight
    full = generalized_ehrhart_series(c)
    top = generalized_ehrhart_series(c.with_weight(homogeneous_component(f, f.degree())))
    assert full.expected_degree == top.expected_degree
    assert full.leading_by_residue == top.leading_by_residue


def test_vmult_integral_for_lattice_polytope():
    rays = [(1, 0, 0), (1, 2, 0), (1, 0, 3), (1, 2, 2)]
    for poly in ["1", "x2*x3", "x1^2 - 3*x2*x3 + 5*x3^2", "(x2+x3)^3"]:
        r = generalized_ehrhart_series(cone(rays, (1, 0, 0), poly))
        assert prepare(cone(rays, (1, 0, 0))).grading_gcd == 1
        assert r.vmult.denominator == 1


def test_threads_do_not_change_result():
    c = cone([(1, 0, 0), (1, 2, 0), (1, 0, 3), (1, 2, 2), (1, 1, 4)], (1, 0, 0), "x2*x3 + x1")
    a = generalized_ehrhart_series(c, threads=1)
    b = generalized_ehrhart_series(c, threads=2)
    assert a.series.ints == b.series.ints and a.series.denominator == b.series.denominator
    assert a.quasi == b.quasi


@pytest.mark.parametrize("c", random_suite(8, start=900), ids=lambda c: str(c.rays))
def test_grouping_invariance(c):
    a = generalized_ehrhart_series(c, group_classes=True).series
    b = generalized_ehrhart_series(c, group_classes=False).series
    assert (a.ints, a.scale_den, a.denominator) == (b.ints, b.scale_den, b.denominator)
