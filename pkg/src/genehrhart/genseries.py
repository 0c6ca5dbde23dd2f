"""Rational functions with denominators ``prod (1-t^u)^e`` and quasipolynomials.

Variable elimination turns ``sum_{y in Z_+^d} g(y) t^{u.y}`` into such a
rational function. Each eliminated variable contributes
``y^m -> sum_j s_{m,j} j! / (1-t^u)^(j+1)`` (rising factorial expansion),
so intermediate coefficients are kept in the basis of pure pole terms
``t^s / prod_u (1-t^u)^(e_u)`` and only combined over a common
denominator at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .combinat import binomial, power_numerator, stirling_rep
from .mpoly import MultiPoly, reorder_exponents
from ._kernel import Packer

__all__ = [
    "RatFn",
    "QuasiPolynomial",
    "DenomClass",
    "SeriesError",
    "monomial_series",
    "eliminate_variables",
    "accumulate",
    "quasipolynomial",
    "accumulate_over",
]


class SeriesError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense univariate helpers (coefficient lists, index = power of t)


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _padd(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _one_minus_pow(u: int, e: int) -> list[int]:
    """Coefficients of ``(1 - t^u)^e``."""
    out = [0] * (u * e + 1)
    for i in range(e + 1):
        out[u * i] = (-1) ** i * binomial(e, i)
    return out


def _times_one_minus(p: Sequence, u: int, e: int = 1) -> list:
    """``p * (1 - t^u)^e`` by shifted subtraction."""
    out = list(p)
    for _ in range(e):
        nxt = out + [0] * u
        for i, c in enumerate(out):
            if c:
                nxt[i + u] -= c
        out = nxt
    return out


def _times_block(p: Sequence, u: int, ell: int, e: int = 1) -> list:
    """``p * ((1 - t^ell) / (1 - t^u))^e`` in linear time per factor."""
    out = list(p)
    for _ in range(e):
        q = _times_one_minus(out, ell)
        # exact division by 1 - t^u: running sums with stride u
        for k in range(u, len(q)):
            q[k] += q[k - u]
        out = q[: len(q) - u]
    return out


def _divide_one_minus(p: Sequence, u: int, e: int = 1) -> list:
    """Exact quotient ``p / (1 - t^u)^e``; raises if it is not a polynomial."""
    out = list(p)
    for _ in range(e):
        for k in range(u, len(out)):
            out[k] += out[k - u]
        cut = max(len(out) - u, 0)
        if any(out[cut:]):
            raise SeriesError(f"numerator is not divisible by (1-t^{u})")
        out = out[:cut]
    return out


# ---------------------------------------------------------------------------


def _canonical_denominator(den: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    merged: dict[int, int] = {}
    for u, e in den:
        if u < 1 or e < 0:
            raise SeriesError(f"bad denominator factor (1-t^{u})^{e}")
        if e:
            merged[u] = merged.get(u, 0) + e
    return tuple(sorted(merged.items()))


class RatFn:
    """``numerator(t) / prod (1 - t^u)^e`` with exact rational coefficients.

    The numerator is stored as integers ``ints`` over a positive common
    ``scale``; ``numerator`` gives the Fraction coefficients. Equality
    compares the represented functions, not the representation.
    """

    __slots__ = ("ints", "scale_den", "denominator", "_frac")

    def __init__(self, numerator: Sequence, denominator: Iterable[tuple[int, int]] = ()):
        coeffs = [Fraction(c) for c in numerator]
        scale = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        self._set(_trim([int(c * scale) for c in coeffs]), scale)
        self.denominator = _canonical_denominator(denominator)

    def _set(self, ints: list, scale: int) -> None:
        g = scale
        for c in ints:
            if g == 1:
                break
            g = gcd(g, c)
        if g > 1:
            ints = [c // g for c in ints]
            scale //= g
        self.ints = tuple(ints)
        self.scale_den = scale
        self._frac = None

    @classmethod
    def from_ints(cls, ints: Sequence[int], scale: int, denominator) -> "RatFn":
        """``sum ints[i] t^i / scale`` over ``denominator`` (no Fraction work)."""
        rf = cls.__new__(cls)
        rf._set(_trim(list(ints)), scale)
        rf.denominator = _canonical_denominator(denominator)
        return rf

    @property
    def numerator(self) -> tuple[Fraction, ...]:
        if self._frac is None:
            self._frac = tuple(Fraction(c, self.scale_den) for c in self.ints)
        return self._frac

    def __repr__(self):
        return f"RatFn({list(self.numerator)!r}, {list(self.denominator)!r})"

    @property
    def denominator_degree(self) -> int:
        return sum(u * e for u, e in self.denominator)

    @property
    def numerator_degree(self) -> int:
        return len(self.ints) - 1

    def is_zero(self) -> bool:
        return not self.ints

    def has_negative_degree(self) -> bool:
        return self.is_zero() or self.numerator_degree < self.denominator_degree

    def denominator_poly(self) -> list[int]:
        p: list[int] = [1]
        for u, e in self.denominator:
            p = _pmul(p, _one_minus_pow(u, e))
        return p

    def series(self, nterms: int) -> list[Fraction]:
        """First ``nterms`` Taylor coefficients at ``t = 0`` (long division)."""
        s = list(self.ints[:nterms]) + [0] * max(0, nterms - len(self.ints))
        for u, e in self.denominator:
            for _ in range(e):
                # divide by (1 - t^u): running sums with stride u
                for k in range(u, nterms):
                    s[k] += s[k - u]
        return [Fraction(c, self.scale_den) for c in s]

    def shift(self, s: int) -> "RatFn":
        """Multiply by ``t^s``."""
        return RatFn.from_ints([0] * s + list(self.ints), self.scale_den, self.denominator)

    def scale(self, c) -> "RatFn":
        c = Fraction(c)
        return RatFn.from_ints(
            [x * c.numerator for x in self.ints], self.scale_den * c.denominator, self.denominator
        )

    def over(self, denominator: Iterable[tuple[int, int]]) -> "RatFn":
        """Rewrite over a multiple of the current denominator.

        Every target factor ``(1-t^U)^E`` absorbs current factors with
        ``u | U``; the numerator is rescaled exactly.
        """
        target = dict(_canonical_denominator(denominator))
        need = {U: E for U, E in target.items()}
        num = list(self.ints)
        for u, e in self.denominator:
            U = u if need.get(u, 0) >= e else next(
                (U for U in sorted(need) if U % u == 0 and need[U] >= e), None
            )
            if U is None:
                raise SeriesError(f"target denominator does not absorb (1-t^{u})^{e}")
            need[U] -= e
            if U != u:
                num = _times_block(num, u, U, e)
        for U, E in need.items():
            if E:
                num = _times_one_minus(num, U, E)
        return RatFn.from_ints(num, self.scale_den, target.items())

    def __add__(self, other: "RatFn") -> "RatFn":
        if not isinstance(other, RatFn):
            return NotImplemented
        den = dict(self.denominator)
        for u, e in other.denominator:
            den[u] = max(den.get(u, 0), e)
        return accumulate_over([self, other], den.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFn):
            return NotImplemented
        if self.denominator == other.denominator:
            return self.ints == other.ints and self.scale_den == other.scale_den
        lhs = _trim(_pmul(self.ints, other.denominator_poly()))
        rhs = _trim(_pmul(other.ints, self.denominator_poly()))
        return [c * other.scale_den for c in lhs] == [c * self.scale_den for c in rhs]

    __hash__ = None

    def __str__(self):
        return f"({_poly_str(self.numerator)}) / {_den_str(self.denominator)}"


def accumulate_over(parts: Iterable[RatFn], denominator) -> RatFn:
    """Exact sum of ``parts`` written over ``denominator``."""
    target = _canonical_denominator(denominator)
    parts = [p if p.denominator == target else p.over(target) for p in parts]
    scale = lcm(*(p.scale_den for p in parts)) if parts else 1
    num: list = []
    for p in parts:
        f = scale // p.scale_den
        num = _padd(num, p.ints if f == 1 else [c * f for c in p.ints])
    return RatFn.from_ints(num, scale, target)


def _poly_str(c: Sequence[Fraction], var: str = "t") -> str:
    parts = []
    for i, x in enumerate(c):
        if not x:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        a = abs(x)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        parts.append(("- " if x < 0 else "+ ") + body)
    if not parts:
        return "0"
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _den_str(den) -> str:
    if not den:
        return "1"
    return "*".join(
        (f"(1-t^{u})" if u > 1 else "(1-t)") + (f"^{e}" if e > 1 else "") for u, e in den
    )


def monomial_series(m: int, u: int) -> RatFn:
    """``sum_k k^m t^(u k) = A_m(t^u) / (1 - t^u)^(m+1)``."""
    if u < 1:
        raise SeriesError("degree must be positive")
    num = [0] * (u * m + 1)
    for i, a in enumerate(power_numerator(m)):
        num[u * i] = a
    return RatFn(num, [(u, m + 1)])


# ---------------------------------------------------------------------------
# elimination


@lru_cache(maxsize=None)
def _pole_expansion(m: int) -> tuple[tuple[int, int], ...]:
    """Nonzero ``(j, s_{m,j} * j!)``: ``y^m`` summed against ``t^(u y)``
    equals ``sum_j s_{m,j} j! / (1-t^u)^(j+1)``."""
    return tuple((j, s * factorial(j)) for j, s in enumerate(stirling_rep(m)) if s)


class PoleLayout:
    """Packed key layout for one denominator class.

    Fields ``0..d-1`` hold the exponents of ``y``, then one pole-order
    field per distinct degree, and the t-shift sits above everything.
    """

    def __init__(self, degrees: Sequence[int], max_degree: int):
        self.degrees = tuple(degrees)
        d = len(self.degrees)
        self.d = d
        self.distinct = tuple(sorted(set(self.degrees), reverse=True))
        self.pole_index = {u: d + k for k, u in enumerate(self.distinct)}
        self.packer = Packer(d + len(self.distinct), max_degree + d)
        self.shift_pos = self.packer.total_bits()
        groups: dict[int, list[int]] = {}
        for i, u in enumerate(self.degrees):
            groups.setdefault(u, []).append(i)
        self._groups = [
            [self.packer.shifts[i] for i in idx] for idx in groups.values() if len(idx) > 1
        ]

    def canonicalize(self, terms: Mapping[int, int]) -> dict[int, int]:
        """Packed counterpart of ``reorder_exponents``."""
        if not self._groups:
            return dict(terms)
        mask = self.packer.mask
        groups = self._groups
        out: dict[int, int] = {}
        get = out.get
        for key, c in terms.items():
            new = key
            for shifts in groups:
                vals = sorted(((key >> s) & mask for s in shifts), reverse=True)
                for s in shifts:
                    new &= ~(mask << s)
                for v, s in zip(vals, shifts):
                    new |= v << s
            out[new] = get(new, 0) + c
        return {k: c for k, c in out.items() if c}

    def eliminate(self, terms: Mapping[int, int]) -> dict[int, int]:
        """Eliminate every ``y`` variable, breadth first.

        After each step the coefficient attached to the remaining exponents
        is a sum of pole terms recorded in the pole-order fields.
        """
        mask = self.packer.mask
        order = sorted(range(self.d), key=lambda i: (-self.degrees[i], i))
        cur = dict(terms)
        for i in order:
            s = self.packer.shifts[i]
            unit = self.packer.units[self.pole_index[self.degrees[i]]]
            out: dict[int, int] = {}
            get = out.get
            for key, c in cur.items():
                m = (key >> s) & mask
                base = key - (m << s)
                for j, coef in _pole_expansion(m):
                    k2 = base + (j + 1) * unit
                    out[k2] = get(k2, 0) + c * coef
            cur = {k: c for k, c in out.items() if c}
        return cur

    def decode_poles(self, key: int) -> tuple[int, tuple[int, ...]]:
        """``(shift, pole orders per distinct degree)`` of an eliminated key."""
        fields = self.packer.unpack(key & ((1 << self.shift_pos) - 1))
        return key >> self.shift_pos, tuple(fields[self.d:])


def _pole_terms_to_ratfn(
    pole_terms: Mapping[tuple[int, tuple[int, ...]], Fraction],
    distinct: Sequence[int],
    target: tuple[int, int] | None = None,
) -> RatFn:
    """Combine ``c t^s / prod_u (1-t^u)^e_u`` terms over one denominator.

    The terms are first brought over ``prod_u (1-t^u)^(max e_u)``. With
    ``target = (ell, D)`` that sum is then rewritten exactly over
    ``(1-t^ell)^D``.
    """
    by_e: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for (s, evec), c in pole_terms.items():
        if c:
            row = by_e.setdefault(evec, {})
            row[s] = row.get(s, 0) + c
    if not by_e:
        return RatFn([], [target] if target is not None else [])
    # integer arithmetic over a common denominator
    scale = lcm(*(Fraction(c).denominator for row in by_e.values() for c in row.values()))
    emax = [max(e[k] for e in by_e) for k in range(len(distinct))]
    num: list = []
    for evec in sorted(by_e):
        row = by_e[evec]
        p = [0] * (max(row) + 1)
        for s, c in row.items():
            p[s] += int(c * scale)
        for u, E, e in zip(distinct, emax, evec):
            if E > e:
                p = _times_one_minus(p, u, E - e)
        num = _padd(num, p)
    den = [(u, E) for u, E in zip(distinct, emax) if E]
    if target is not None:
        ell, D = target
        for u, _ in den:
            if ell % u:
                raise SeriesError(f"{u} does not divide {ell}")
        num = _times_one_minus(num, ell, D)
        for u, E in den:
            num = _divide_one_minus(num, u, E)
        den = [(ell, D)]
    return RatFn.from_ints(num, scale, den)


class DenomClass:
    """Accumulated transformed weights sharing one sorted degree tuple.

    ``terms`` maps packed ``(shift, y exponents)`` keys to integer
    coefficients; the represented polynomial is ``terms / den``.
    """

    def __init__(self, degrees: Sequence[int], max_degree: int):
        self.key = tuple(degrees)
        self.layout = PoleLayout(self.key, max_degree)
        self.terms: dict[int, int] = {}
        self.den = 1

    def _align(self, den: int) -> int:
        if den == self.den:
            return 1
        common = lcm(self.den, den)
        if common != self.den:
            f = common // self.den
            self.terms = {k: c * f for k, c in self.terms.items()}
            self.den = common
        return common // den

    def add_packed(self, terms: Mapping[int, int], den: int = 1, shift: int = 0) -> None:
        """Add already canonicalized packed terms times ``t^shift / den``."""
        f = self._align(den)
        sh = shift << self.layout.shift_pos
        acc = self.terms
        get = acc.get
        for k, c in terms.items():
            k += sh
            acc[k] = get(k, 0) + c * f

    def add(self, g: MultiPoly, shift: int = 0) -> None:
        """Add ``t^shift * g(y)``; ``g`` uses this class's variable order."""
        if g.nvars != len(self.key):
            raise SeriesError("polynomial has the wrong number of variables")
        g = reorder_exponents(g, self.key)
        den = lcm(*(c.denominator for _, c in g.items())) if len(g) else 1
        packed = {self.layout.packer.pack(e): int(c * den) for e, c in g.items()}
        self.add_packed(packed, den, shift)

    def merge(self, other: "DenomClass") -> None:
        if other.key != self.key:
            raise SeriesError("cannot merge different denominator classes")
        self.add_packed(other.terms, other.den)

    def pole_terms(self) -> dict[tuple[int, tuple[int, ...]], Fraction]:
        elim = self.layout.eliminate(self.terms)
        out: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        for key, c in elim.items():
            s, evec = self.layout.decode_poles(key)
            out[(s, evec)] = out.get((s, evec), 0) + Fraction(c, self.den)
        return out

    def ratfn(self, target: tuple[int, int] | None = None) -> RatFn:
        return _pole_terms_to_ratfn(self.pole_terms(), self.layout.distinct, target)


def eliminate_variables(
    g: MultiPoly | Mapping[tuple[int, tuple[int, ...]], object],
    degrees: Sequence[int],
    target: tuple[int, int] | None = None,
) -> RatFn:
    """``sum_{y in Z_+^d} g(y) t^(degrees . y)`` as a rational function.

    ``g`` is a ``MultiPoly`` in ``d`` variables, or a mapping from
    ``(t_shift, exponents)`` to coefficients.
    """
    degrees = tuple(int(u) for u in degrees)
    if any(u < 1 for u in degrees):
        raise SeriesError("degrees must be positive")
    if isinstance(g, MultiPoly):
        items = [((0, e), c) for e, c in g.items()]
    else:
        items = [((int(s), tuple(e)), Fraction(c)) for (s, e), c in g.items()]
    d = len(degrees)
    maxdeg = max((sum(e) for (_, e), _ in items), default=0)
    cls = DenomClass(degrees, maxdeg)
    by_shift: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for (s, e), c in items:
        if len(e) != d:
            raise SeriesError("exponent vector length differs from number of degrees")
        row = by_shift.setdefault(s, {})
        row[e] = row.get(e, 0) + Fraction(c)
    for s in sorted(by_shift):
        cls.add(MultiPoly(d, by_shift[s]), s)
    return cls.ratfn(target)


def accumulate(
    parts: Iterable[RatFn], ell: int | None = None, D: int | None = None
) -> RatFn:
    """Sum rational functions over the single denominator ``(1-t^ell)^D``."""
    parts = list(parts)
    if ell is None:
        ell = lcm(*(u for p in parts for u, _ in p.denominator)) if parts else 1
    if D is None:
        D = max((sum(e for _, e in p.denominator) for p in parts), default=0)
    return accumulate_over(parts, [(ell, D)])


# ---------------------------------------------------------------------------
# quasipolynomials


@dataclass(frozen=True)
class QuasiPolynomial:
    """Polynomials ``components[j]`` (coefficients of ``k^0..k^(D-1)``)
    with ``q(k) = components[k mod period](k)``."""

    period: int
    ell: int
    components: tuple[tuple[Fraction, ...], ...]

    @property
    def degree_bound(self) -> int:
        return len(self.components[0]) - 1 if self.components else -1

    def __call__(self, k: int) -> Fraction:
        comp = self.components[k % self.period]
        return sum((c * k ** i for i, c in enumerate(comp)), Fraction(0))

    def top_coefficients(self, index: int | None = None) -> list[Fraction]:
        if index is None:
            index = self.degree_bound
        return [c[index] if 0 <= index < len(c) else Fraction(0) for c in self.components]


def _shifted_binomials(D: int) -> list[list[int]]:
    """``(D-1)! * binomial(z - m + D - 1, D - 1)`` in ``z``, for ``m < D``."""
    out = []
    for m in range(D):
        p = [1]
        for r in range(1, D):
            p = _pmul(p, [r - m, 1])
        out.append(p + [0] * (D - len(p)))
    return out


def quasipolynomial(rf: RatFn) -> QuasiPolynomial:
    """Quasipolynomial of a rational function over ``(1-t^ell)^D``.

    For ``k = j + z*ell`` the coefficient is
    ``sum_m num[j + m*ell] * binomial(z - m + D - 1, D - 1)``; that
    polynomial in ``z`` is rewritten in ``k``.
    """
    if len(rf.denominator) > 1:
        rf = accumulate([rf])
    if not rf.has_negative_degree():
        raise SeriesError("rational function must have negative degree")
    if not rf.denominator:
        # a polynomial of negative degree is zero
        return QuasiPolynomial(1, 1, ((Fraction(0),),))
    ell, D = rf.denominator[0]
    scale = rf.scale_den
    num = list(rf.ints)
    num += [0] * (ell * D - len(num))
    P = _shifted_binomials(D)
    binom_rows = [[binomial(a, b) for b in range(D)] for a in range(D)]
    ell_pows = [ell ** (D - 1 - a) for a in range(D)]
    zero = (0,) * D
    comps: list[tuple[int, ...]] = []
    for j in range(ell):
        cz = [0] * D
        for m in range(D):
            c = num[j + m * ell]
            if c:
                for a, x in enumerate(P[m]):
                    cz[a] += c * x
        if not any(cz):
            comps.append(zero)
            continue
        # sum_a cz[a] ((k - j)/ell)^a, scaled by ell^(D-1)
        ck = [0] * D
        for a in range(D):
            if cz[a]:
                w = cz[a] * ell_pows[a]
                row = binom_rows[a]
                mj = 1
                for b in range(a, -1, -1):
                    ck[b] += w * row[b] * mj
                    mj *= -j
        comps.append(tuple(ck))
    period = ell
    for p in range(1, ell + 1):
        if ell % p == 0 and all(comps[j] == comps[j - p] for j in range(p, ell)):
            period = p
            break
    den = scale * factorial(D - 1) * ell ** (D - 1)
    return QuasiPolynomial(
        period, ell, tuple(tuple(Fraction(c, den) for c in comps[j]) for j in range(period))
    )
