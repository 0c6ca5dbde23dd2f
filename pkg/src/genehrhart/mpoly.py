"""Sparse multivariate polynomials with exact rational coefficients.

Also hosts the weight-expression parser, affine substitution and the
exponent reordering used before variable elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import groupby
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "MultiPoly",
    "PolynomialSyntaxError",
    "parse_polynomial",
    "parse_factors",
    "substitute_affine",
    "homogeneous_component",
    "reorder_exponents",
]

Exponent = tuple[int, ...]


def _graded_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over Q.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    Iteration is in descending graded lexicographic order.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent {e} for {nvars} variables")
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        """The variable ``x_{i+1}`` (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexError(i)
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        for e in sorted(self._terms, key=_graded_key, reverse=True):
            yield e, self._terms[e]

    def __iter__(self):
        return self.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly._raw(self.nvars, {})
        return MultiPoly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        if len(point) != self.nvars:
            raise ValueError("wrong number of arguments")
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self})"


def homogeneous_component(f: MultiPoly, m: int) -> MultiPoly:
    """Sum of the terms of ``f`` of total degree exactly ``m``."""
    return MultiPoly._raw(f.nvars, {e: c for e, c in f._terms.items() if sum(e) == m})


def reorder_exponents(f: MultiPoly, degree_of_var: Sequence[int]) -> MultiPoly:
    """Sort exponents into decreasing order within blocks of equal degree.

    The weighted sum over ``Z_+^d`` is invariant under permuting variables
    of equal degree, so terms are canonicalized and merged.
    """
    if len(degree_of_var) != f.nvars:
        raise ValueError("degree_of_var must have one entry per variable")
    blocks = _degree_blocks(degree_of_var)
    out: dict[Exponent, Fraction] = {}
    for e, c in f._terms.items():
        e2 = _reorder_one(e, blocks)
        out[e2] = out.get(e2, 0) + c
    return MultiPoly._raw(f.nvars, {e: c for e, c in out.items() if c})


def _degree_blocks(degree_of_var: Sequence[int]) -> list[list[int]]:
    by_deg: dict[int, list[int]] = {}
    for i, u in enumerate(degree_of_var):
        by_deg.setdefault(u, []).append(i)
    return [idx for idx in by_deg.values() if len(idx) > 1]


def _reorder_one(e: Exponent, blocks: list[list[int]]) -> Exponent:
    if not blocks:
        return e
    e = list(e)
    for idx in blocks:
        vals = sorted((e[i] for i in idx), reverse=True)
        for i, v in zip(idx, vals):
            e[i] = v
    return tuple(e)


def substitute_affine(
    f: MultiPoly,
    columns: Sequence[Sequence[object]],
    offset: Sequence[object] | None = None,
) -> MultiPoly:
    """Return ``f(sum_i y_i * columns[i] + offset)`` as a polynomial in ``y``.

    Expands term by term; powers of each substituted linear form are
    memoized for the duration of the call.
    """
    n = f.nvars
    d = len(columns)
    if any(len(col) != n for col in columns):
        raise ValueError("every column must have length nvars")
    if offset is None:
        offset = [0] * n
    if len(offset) != n:
        raise ValueError("offset must have length nvars")
    forms = []
    for j in range(n):
        terms = {}
        for i in range(d):
            c = Fraction(columns[i][j])
            if c:
                e = [0] * d
                e[i] = 1
                terms[tuple(e)] = c
        if offset[j]:
            terms[(0,) * d] = Fraction(offset[j])
        forms.append(MultiPoly._raw(d, terms))

    powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(d, 1)} for _ in range(n)]

    def power(j: int, k: int) -> MultiPoly:
        cache = powers[j]
        if k not in cache:
            top = max(cache)
            p = cache[top]
            for kk in range(top + 1, k + 1):
                p = p * forms[j]
                cache[kk] = p
        return cache[k]

    out = MultiPoly.constant(d, 0)
    for e, c in f._terms.items():
        term = MultiPoly.constant(d, c)
        for j, k in enumerate(e):
            if k:
                term = term * power(j, k)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# weight expression parser


class PolynomialSyntaxError(ValueError):
    """Raised for malformed weight expressions; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), i))
            i = j
        elif ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolynomialSyntaxError("variable needs an index, e.g. x1", i, text)
            toks.append(("var", int(text[i + 1:j]), i))
            i = j
        elif text.startswith("binom", i):
            toks.append(("binom", None, i))
            i += 5
        elif ch in "+-*/^(),":
            toks.append((ch, None, i))
            i += 1
        else:
            raise PolynomialSyntaxError(f"unexpected character {ch!r}", i, text)
    toks.append(("end", None, n))
    return toks


class _Parser:
    """Recursive descent over the weight grammar.

    Products are kept as factor lists so that callers may substitute the
    factors separately before multiplying.
    """

    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0])
            raise PolynomialSyntaxError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.pos += 1
        return tok

    def parse(self) -> list[MultiPoly]:
        factors = self.expr_factors()
        tok = self.peek()
        if tok[0] != "end":
            raise PolynomialSyntaxError(f"unexpected {tok[0]!r}", tok[2], self.text)
        return factors

    def expr_factors(self) -> list[MultiPoly]:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        first = self.term()
        if self.peek()[0] not in ("+", "-"):
            if sign < 0:
                first = [MultiPoly.constant(self.nvars, -1)] + first
            return first
        acc = _product(first, self.nvars).scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = _product(self.term(), self.nvars)
            acc = acc + t if op == "+" else acc - t
        return [acc]

    def term(self) -> list[MultiPoly]:
        factors = self.factor()
        while self.peek()[0] == "*":
            self.take()
            factors = factors + self.factor()
        return factors

    def factor(self) -> list[MultiPoly]:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                raise PolynomialSyntaxError("negative exponent", tok[2], self.text)
            k = self.take("int")[1]
            return base * k
        return base

    def base(self) -> list[MultiPoly]:
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            num = tok[1]
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("int")
                if den_tok[1] == 0:
                    raise PolynomialSyntaxError("zero denominator", den_tok[2], self.text)
                return [MultiPoly.constant(self.nvars, Fraction(num, den_tok[1]))]
            return [MultiPoly.constant(self.nvars, num)]
        if kind == "var":
            self.take()
            idx = tok[1]
            if not 1 <= idx <= self.nvars:
                raise PolynomialSyntaxError(
                    f"variable x{idx} out of range 1..{self.nvars}", tok[2], self.text
                )
            return [MultiPoly.variable(self.nvars, idx - 1)]
        if kind == "(":
            self.take()
            inner = self.expr_factors()
            self.take(")")
            return inner
        if kind == "binom":
            self.take()
            self.take("(")
            arg = _product(self.expr_factors(), self.nvars)
            self.take(",")
            ktok = self.peek()
            if ktok[0] != "int":
                raise PolynomialSyntaxError(
                    "binom needs a nonnegative integer literal", ktok[2], self.text
                )
            k = self.take()[1]
            self.take(")")
            out = [MultiPoly.constant(self.nvars, Fraction(1, factorial(k)))]
            out += [arg - i for i in range(k)]
            return out
        what = "end of input" if kind == "end" else repr(kind)
        raise PolynomialSyntaxError(f"unexpected {what}", tok[2], self.text)


def _product(factors: Iterable[MultiPoly], nvars: int) -> MultiPoly:
    out = MultiPoly.constant(nvars, 1)
    for f in factors:
        out = out * f
    return out


def parse_factors(text: str, nvars: int) -> list[MultiPoly]:
    """Parse ``text`` into factors whose product is the weight polynomial.

    Top-level products, powers and ``binom`` of any expression are split
    into separate factors; sums are expanded.
    """
    if nvars < 1:
        raise ValueError("nvars must be positive")
    factors = _Parser(text, nvars).parse()
    consts = [f for f in factors if f.degree() <= 0]
    rest = [f for f in factors if f.degree() > 0]
    c = _product(consts, nvars)
    if c.is_zero():
        return [c]
    return ([c] if c != 1 else []) + rest


def parse_polynomial(text: str, nvars: int) -> MultiPoly:
    """Parse and fully expand a weight expression in ``x1 .. x{nvars}``."""
    return _product(parse_factors(text, nvars), nvars)


def group_by_degree(f: MultiPoly) -> dict[int, MultiPoly]:
    """Homogeneous components keyed by degree."""
    keyed = sorted(f._terms.items(), key=lambda t: sum(t[0]))
    return {
        m: MultiPoly._raw(f.nvars, dict(grp))
        for m, grp in groupby(keyed, key=lambda t: sum(t[0]))
    }
