"""Exact combinatorial numbers and one-variable power series numerators.

``stirling_rep(m)`` gives the coefficients of ``k**m`` in the rising
factorial basis ``(k+1)_j = (k+1)(k+2)...(k+j)``, and ``power_numerator(m)``
the numerator ``A_m(t)`` in ``sum_k k**m t**k = A_m(t) / (1-t)**(m+1)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

__all__ = [
    "binomial",
    "rising_factorial",
    "stirling2",
    "stirling_rep",
    "power_numerator",
]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient ``n(n-1)...(n-k+1)/k!`` for any integer ``n``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)


def rising_factorial(x, j: int):
    """``(x)(x+1)...(x+j-1)``; works for ints and Fractions."""
    out = 1
    for i in range(j):
        out *= x + i
    return out


@lru_cache(maxsize=None)
def _stirling2_row(p: int) -> tuple[int, ...]:
    if p == 0:
        return (1,)
    prev = _stirling2_row(p - 1) + (0,)
    row = [0] * (p + 1)
    for q in range(1, p + 1):
        row[q] = q * prev[q] + prev[q - 1]
    return tuple(row)


def stirling2(p: int, q: int) -> int:
    """Stirling number of the second kind S(p, q)."""
    if p < 0 or q < 0 or q > p:
        return 0
    return _stirling2_row(p)[q]


@lru_cache(maxsize=None)
def stirling_rep(m: int) -> tuple[int, ...]:
    """Coefficients ``s[0..m]`` with ``k**m == sum_j s[j] * (k+1)_j``.

    ``s[j] = (-1)**(m-j) * S(m+1, j+1)``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    row = _stirling2_row(m + 1)
    return tuple((-1) ** (m - j) * row[j + 1] for j in range(m + 1))


@lru_cache(maxsize=None)
def power_numerator(m: int) -> tuple[int, ...]:
    """Coefficients of ``A_m(t)`` (degree ``m``) in ``t**0 .. t**m``.

    Obtained by bringing ``sum_j s[j] * j! / (1-t)**(j+1)`` over
    ``(1-t)**(m+1)``. For ``m > 0`` these are the Eulerian numbers.
    """
    s = stirling_rep(m)
    out = [0] * (m + 1)
    for j, sj in enumerate(s):
        if not sj:
            continue
        c = sj * factorial(j)
        # times (1-t)**(m-j)
        e = m - j
        for i in range(e + 1):
            out[i] += c * (-1) ** i * binomial(e, i)
    return tuple(out)

