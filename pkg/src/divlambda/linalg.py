"""Exact integer and rational matrix algebra.

Matrices are plain lists of rows.  Integer entries are Python ints, so no
overflow is possible; rational entries are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence

IntMatrix = List[List[int]]
RatMatrix = List[List[Fraction]]


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right == diag(diag)`` with unimodular ``left``/``right``."""

    left: IntMatrix
    diag: List[int]
    right: IntMatrix


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy_matrix(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(row) for row in M]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(row) != cols for row in M):
        raise ValueError("ragged matrix")
    return rows, cols


def transpose(M: Sequence[Sequence]) -> list:
    rows, cols = shape(M)
    return [[M[i][j] for i in range(rows)] for j in range(cols)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise ValueError(f"shape mismatch: {n}x{k} times {k2}x{m}")
    Bt = transpose(B) if k else [[] for _ in range(m)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def delete_index(M: Sequence[Sequence[int]], k: int) -> IntMatrix:
    """Remove row ``k`` and column ``k``."""
    return [[v for j, v in enumerate(row) if j != k] for i, row in enumerate(M) if i != k]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n, m = shape(M)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = copy_matrix(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _combine_columns(M: IntMatrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
    for row in M:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form of a square nonsingular matrix.

    Returns ``(H, W)`` with ``M @ W == H``, ``W`` unimodular and ``H`` lower
    triangular with positive diagonal; every entry left of a pivot lies in
    ``[0, pivot)``.
    """
    n, m = shape(M)
    if n != m:
        raise ValueError("hermite_normal_form expects a square matrix")
    H = copy_matrix(M)
    W = identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][i]
            g, x, y = xgcd(a, b)
            # [[x, -b/g], [y, a/g]] has determinant 1
            _combine_columns(H, i, j, x, y, -b // g, a // g)
            _combine_columns(W, i, j, x, y, -b // g, a // g)
        p = H[i][i]
        if p == 0:
            raise SingularMatrixError("singular matrix")
        if p < 0:
            for row in H:
                row[i] = -row[i]
            for row in W:
                row[i] = -row[i]
            p = -p
        for j in range(i):
            q = H[i][j] // p
            if q:
                _combine_columns(H, j, i, 1, -q, 0, 1)
                _combine_columns(W, j, i, 1, -q, 0, 1)
    return H, W


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by row/column reduction on the least nonzero entry."""
    n, m = shape(M)
    if n != m:
        raise ValueError("smith_normal_form expects a square matrix")
    S = copy_matrix(M)
    U = identity(n)
    W = identity(n)

    def swap_rows(A, i, j):
        A[i], A[j] = A[j], A[i]

    def swap_cols(A, i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]

    def add_row(A, src, dst, c):
        A[dst] = [y + c * x for x, y in zip(A[src], A[dst])]

    def add_col(A, src, dst, c):
        for row in A:
            row[dst] += c * row[src]

    for t in range(n):
        while True:
            nonzero = [
                (abs(S[i][j]), i, j)
                for i in range(t, n)
                for j in range(t, n)
                if S[i][j] != 0
            ]
            if not nonzero:
                raise SingularMatrixError("singular matrix")
            _, pi, pj = min(nonzero)
            swap_rows(S, t, pi)
            swap_rows(U, t, pi)
            swap_cols(S, t, pj)
            swap_cols(W, t, pj)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = S[i][t] // p
                if q:
                    add_row(S, t, i, -q)
                    add_row(U, t, i, -q)
                dirty |= S[i][t] != 0
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(S, t, j, -q)
                    add_col(W, t, j, -q)
                dirty |= S[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(S, bad, t, 1)
            add_row(U, bad, t, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(U, [S[i][i] for i in range(n)], W)


def rational_inverse(M: Sequence[Sequence[int]]) -> RatMatrix:
    """Exact inverse over the rationals (Gauss-Jordan on fractions)."""
    n, m = shape(M)
    if n != m:
        raise ValueError("rational_inverse expects a square matrix")
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def solve(M: Sequence[Sequence[int]], b: Sequence) -> List[Fraction]:
    """Exact solution of ``M x = b`` for square nonsingular ``M``."""
    return matvec(rational_inverse(M), [Fraction(v) for v in b])


def integer_inverse(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular matrix."""
    inv = rational_inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
