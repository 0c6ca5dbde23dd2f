"""Exact integer and rational linear algebra on lists of lists."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[dot(r, c) for c in Bt] for r in A]


def vecmat(v: Sequence, A: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not A:
        return []
    out = [0] * len(A[0])
    for x, row in zip(v, A):
        if x:
            for j, a in enumerate(row):
                out[j] += x * a
    return out


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            row_i = M[i]
            mik = row_i[k]
            row_k = M[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def row_echelon(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    M = [[Fraction(x) for x in r] for r in A]
    rows = len(M)
    cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(row_echelon(A)[1])


def independent_rows(A: Sequence[Sequence]) -> list[int]:
    """Indices of the lexicographically first maximal independent row set."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivcols: list[int] = []
    for idx, row in enumerate(A):
        v = [Fraction(x) for x in row]
        for b, pc in zip(basis, pivcols):
            if v[pc]:
                f = v[pc]
                v = [a - f * c for a, c in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [x * inv for x in v]
        # keep basis reduced so later eliminations stay valid
        for k, b in enumerate(basis):
            if b[pc]:
                f = b[pc]
                basis[k] = [a - f * c for a, c in zip(b, v)]
        basis.append(v)
        pivcols.append(pc)
        chosen.append(idx)
    return chosen


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    R, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` over Q."""
    if ncols is None:
        ncols = len(A[0])
    if not A:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = row_echelon(A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -R[r][fcol]
        basis.append(v)
    return basis


def integral_nullspace(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Nullspace vectors scaled to primitive integer vectors."""
    out = []
    for v in nullspace(A, ncols):
        m = 1
        for x in v:
            m = m * x.denominator // gcd(m, x.denominator)
        out.append(list(primitive([int(x * m) for x in v])))
    return out


def normal_vector(rows: Sequence[Sequence[int]]) -> list[int]:
    """Integer vector orthogonal to ``d-1`` independent vectors in ``Z^d``.

    Cofactor expansion: component ``j`` is ``(-1)^j`` times the minor with
    column ``j`` deleted.
    """
    d = len(rows) + 1
    out = []
    for j in range(d):
        minor = [[r[c] for c in range(d) if c != j] for r in rows]
        out.append((-1) ** j * det(minor))
    return list(primitive(out))


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U A V = D``, ``U, V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row dst += f * row src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):  # col dst += f * col src
        for r in D:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if done:
                # divisibility: fold any entry not divisible by the pivot
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remaining entry of row/col t to the pivot
            cand = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
            cand += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
            _, i, j = min(cand)
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def integer_inverse(U: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix."""
    inv = inverse(U)
    out = []
    for r in inv:
        if any(x.denominator != 1 for x in r):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in r])
    return out


def saturation_basis(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis of ``Z^k ∩ span(rows)`` (the saturated sublattice)."""
    if not rows:
        return []
    D, U, V = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    Vinv = integer_inverse(V)
    return [list(Vinv[i]) for i in range(r)]


def solve_rows(basis: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``c · basis = v`` or ``None`` if ``v`` is not in the span."""
    k = len(basis)
    n = len(v)
    # columns are basis vectors; solve B^T c = v
    aug = [[basis[i][j] for i in range(k)] + [v[j]] for j in range(n)]
    R, piv = row_echelon(aug)
    if k in piv:
        return None
    c = [Fraction(0)] * k
    for r, pc in enumerate(piv):
        c[pc] = R[r][k]
    return c
