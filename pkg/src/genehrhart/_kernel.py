"""Integer polynomial kernels with exponent vectors packed into one int.

A polynomial is a ``dict`` from packed exponent to ``int`` coefficient.
Field ``i`` occupies bits ``[i*width, (i+1)*width)``; the caller picks a
width large enough for every exponent that can occur.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class Packer:
    __slots__ = ("nvars", "width", "mask", "shifts", "units")

    def __init__(self, nvars: int, max_exponent: int):
        self.nvars = nvars
        self.width = max(4, max_exponent.bit_length() + 1)
        self.mask = (1 << self.width) - 1
        self.shifts = [i * self.width for i in range(nvars)]
        self.units = [1 << s for s in self.shifts]

    def pack(self, e: Sequence[int]) -> int:
        k = 0
        for x, s in zip(e, self.shifts):
            k |= x << s
        return k

    def unpack(self, k: int) -> tuple[int, ...]:
        m = self.mask
        w = self.width
        out = []
        for _ in range(self.nvars):
            out.append(k & m)
            k >>= w
        return tuple(out)

    def total_bits(self) -> int:
        return self.width * self.nvars


def mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def integer_form(terms: Iterable[tuple[Sequence[int], Fraction]]):
    """Scale rational terms to integers; returns ``(int_terms, denominator)``."""
    terms = list(terms)
    den = lcm(*(c.denominator for _, c in terms)) if terms else 1
    return [(e, int(c * den)) for e, c in terms], den


def linear_forms(
    packer: Packer, columns: Sequence[Sequence[int]], offset: Sequence[int]
) -> list[dict[int, int]]:
    """``l_j(y) = sum_i columns[i][j] * y_i + offset[j]`` for each ambient ``j``."""
    n = len(offset)
    forms = []
    for j in range(n):
        f: dict[int, int] = {}
        for i, col in enumerate(columns):
            if col[j]:
                f[packer.units[i]] = col[j]
        if offset[j]:
            f[0] = offset[j]
        forms.append(f)
    return forms


def substitute(
    int_terms: Sequence[tuple[Sequence[int], int]], forms: Sequence[dict[int, int]]
) -> dict[int, int]:
    """Evaluate an integer polynomial at the given linear forms."""
    powers: list[list[dict[int, int]]] = [[{0: 1}] for _ in forms]

    def power(j: int, k: int) -> dict[int, int]:
        cache = powers[j]
        while len(cache) <= k:
            cache.append(mul(cache[-1], forms[j]))
        return cache[k]

    out: dict[int, int] = {}
    for e, c in int_terms:
        term = {0: c}
        for j, k in enumerate(e):
            if k:
                term = mul(term, power(j, k))
        for key, v in term.items():
            out[key] = out.get(key, 0) + v
    return {k: c for k, c in out.items() if c}


def substitute_product(
    factors: Sequence[tuple[list[tuple[Sequence[int], int]], int]],
    forms: Sequence[dict[int, int]],
) -> tuple[dict[int, int], int]:
    """Substitute each integer factor separately, then multiply.

    ``factors`` holds ``(int_terms, denominator)`` pairs. Returns the
    integer product and the overall denominator.
    """
    den = 1
    const = 1
    polys = []
    for int_terms, fden in factors:
        den *= fden
        if all(not any(e) for e, _ in int_terms):
            const *= sum(c for _, c in int_terms)
            continue
        polys.append(substitute(int_terms, forms))
    if const == 0:
        return {}, 1
    polys.sort(key=len)
    acc = {0: const}
    for p in polys:
        acc = mul(acc, p)
        if not acc:
            return {}, 1
    return acc, den
