import itertools
from fractions import Fraction
from math import factorial

import pytest

from genehrhart.ehrhart import generalized_ehrhart_series
from genehrhart.integrate import (
    IntegrationError,
    integrate_monomial,
    integrate_over_polytope,
    simplex_charts,
)
from genehrhart.mpoly import parse_polynomial
from genehrhart.polyhedra import ConeInput

F = Fraction


def cone(rays, grading, poly="1"):
    n = len(grading)
    return ConeInput(n, rays, grading, weight=parse_polynomial(poly, n))


def test_integrate_monomial_examples():
    for d in range(1, 6):
        assert integrate_monomial((0,) * d) == F(1, factorial(d - 1))
    assert integrate_monomial((1, 1)) == F(1, 6)
    assert integrate_monomial((2, 0)) == F(1, 3)


def test_integrate_monomial_needs_a_variable():
    with pytest.raises(ValueError):
        integrate_monomial(())


@pytest.mark.parametrize("d,s", [(1, 3), (2, 4), (3, 3), (4, 2)])
def test_power_of_coordinate_sum(d, s):
    # y_1 + ... + y_d = 1 on the simplex
    total = F(0)
    for e in itertools.product(range(s + 1), repeat=d):
        if sum(e) == s:
            multinom = factorial(s)
            for m in e:
                multinom //= factorial(m)
            total += multinom * integrate_monomial(e)
    assert total == F(1, factorial(d - 1))


def test_polytope_examples():
    assert integrate_over_polytope(cone([(1, 0), (0, 1)], (1, 1), "x1*x2")) == F(1, 6)
    assert integrate_over_polytope(cone([(1, 0), (0, 1)], (1, 1))) == 1
    assert integrate_over_polytope(cone([(1, 0), (1, 2)], (1, 0))) == 2


def test_full_weight():
    c = cone([(1, 0), (1, 1)], (1, 0), "x1 + x2")
    assert integrate_over_polytope(c, top_only=False) == F(3, 2)
    assert integrate_over_polytope(c, polynomial=parse_polynomial("x2^2", 2)) == F(1, 3)


def test_top_component_is_default():
    c = cone([(1, 0), (1, 1)], (1, 0), "x2 + 7")
    assert integrate_over_polytope(c) == F(1, 2)


def test_nonprimitive_grading_rejected():
    with pytest.raises(IntegrationError):
        integrate_over_polytope(cone([(1, 0), (0, 1)], (2, 2)))


def test_empty_cone():
    assert integrate_over_polytope(cone([], (1, 1))) == 0


def test_charts_have_degree_one_vertices():
    c = cone([(1, 0, 0), (1, 2, 0), (1, 0, 3), (2, 1, 1)], (1, 1, 1))
    for ch in simplex_charts(c):
        assert ch.factor > 0
        for v in ch.vertices:
            assert sum(v) == 1


def test_additivity_under_ray_insertion():
    rays = [(1, 0, 0), (1, 3, 0), (1, 0, 3)]
    f = "x2^2*x3 + x1*x2*x3"
    base = integrate_over_polytope(cone(rays, (1, 0, 0), f))
    for extra in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 0)]:
        assert integrate_over_polytope(cone(rays + [extra], (1, 0, 0), f)) == base
        assert integrate_over_polytope(cone([extra] + rays, (1, 0, 0), f)) == base


def test_scaling():
    rays = [(1, 0, 0), (1, 2, 0), (1, 0, 3), (1, 2, 2)]
    a = integrate_over_polytope(cone(rays, (1, 0, 0), "x2*x3"))
    b = integrate_over_polytope(cone(rays, (1, 0, 0), "-7/3*x2*x3"))
    assert b == F(-7, 3) * a


@pytest.mark.parametrize(
    "rays,grading,poly",
    [
        ([(1, 0), (0, 1)], (1, 1), "x1^3"),
        ([(1, 0, 0), (1, 2, 0), (1, 0, 3), (1, 2, 2)], (1, 0, 0), "x2*x3 - x2^2"),
        ([(2, 1), (1, 3)], (1, 0), "x1*x2"),
        ([(1, 1, 0), (0, 1, 1), (1, 2, 1)], (1, 0, 1), "x2^2"),
    ],
)
def test_matches_series_leading_coefficient(rays, grading, poly):
    c = cone(rays, grading, poly)
    r = generalized_ehrhart_series(c)
    assert r.leading == integrate_over_polytope(c)
