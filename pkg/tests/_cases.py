"""Deterministic random inputs shared by the oracle-based tests."""

import random
from fractions import Fraction

from genehrhart import linalg
from genehrhart.mpoly import MultiPoly
from genehrhart.polyhedra import ConeInput


def _rays(rng, n):
    while True:
        k = rng.randint(2, 5)
        rays = []
        for _ in range(k):
            r = [rng.randint(0, 4) for _ in range(n)]
            if n == 4:
                r[3] = r[0]  # keeps rank <= 3
            if any(r) and r not in rays:
                rays.append(r)
        if rays and linalg.rank(rays) <= 3:
            return rays


def _weight(rng, n, homogeneous=False):
    terms = {}
    top = rng.randint(0, 3)
    for _ in range(rng.randint(1, 3)):
        deg = top if homogeneous else rng.randint(0, 3)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + Fraction(rng.randint(1, 5), rng.choice([1, 1, 2, 3]))
    return MultiPoly(n, terms)


def random_cone(seed, homogeneous=False):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    rays = _rays(rng, n)
    grading = [rng.randint(1, 2) for _ in range(n)]
    return ConeInput(n, rays, grading, weight=_weight(rng, n, homogeneous))


def random_suite(count=24, homogeneous=False, start=0):
    return [random_cone(start + i, homogeneous) for i in range(count)]


def describe(cone):
    return f"n={cone.ambient_dim} rays={list(cone.rays)} deg={cone.grading} f={cone.weight}"
