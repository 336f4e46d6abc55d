"""Exact integer and rational matrix algebra.

Matrices are plain lists of rows.  Integer entries are Python ints and
rational entries are :class:`fractions.Fraction`, so nothing here ever
rounds.  All functions return fresh lists and never mutate their input.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[int]]


class NoSolution(ValueError):
    """Raised by :func:`solve_rational` when the system is inconsistent."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    Bt = list(zip(*B))
    if not Bt:
        return [[] for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def bilinear(G: Sequence[Sequence], u: Sequence, v: Sequence):
    """Return u^t G v."""
    return dot(u, matvec(G, v))


def block_diagonal(*blocks: Sequence[Sequence[int]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def is_symmetric(M: Sequence[Sequence]) -> bool:
    return all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(i))


def det_exact(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("det_exact needs a square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
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


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A, dst, src, c):
    if c:
        rs = A[src]
        rd = A[dst]
        for k in range(len(rd)):
            rd[k] += c * rs[k]


def _add_col(A, dst, src, c):
    if c:
        for row in A:
            row[dst] += c * row[src]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U M V = D`` in Smith normal form.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...`` (zeros last).  The pivot is always the
    entry of smallest absolute value in the remaining block, which keeps
    already-diagonal unimodular blocks untouched.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(row) for row in M]
    U = identity(m)
    V = identity(n)
    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (pivot is None or abs(a) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                _swap_rows(A, t, i)
                _swap_rows(U, t, i)
            if j != t:
                _swap_cols(A, t, j)
                _swap_cols(V, t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                c = A[i][t] // p
                _add_row(A, i, t, -c)
                _add_row(U, i, t, -c)
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                c = A[t][j] // p
                _add_col(A, j, t, -c)
                _add_col(V, j, t, -c)
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(A, t, bad, 1)
            _add_row(U, t, bad, 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: return ``(H, U)`` with ``U M = H``.

    ``H`` is in row echelon form with positive pivots, entries above each
    pivot reduced into ``[0, pivot)`` and zero rows at the bottom.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(row) for row in M]
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][j]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(H[i][j]))
            if i0 != r:
                _swap_rows(H, r, i0)
                _swap_rows(U, r, i0)
            done = True
            for i in range(r + 1, m):
                if H[i][j]:
                    c = H[i][j] // H[r][j]
                    _add_row(H, i, r, -c)
                    _add_row(U, i, r, -c)
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][j]
        for i in range(r):
            c = H[i][j] // p
            _add_row(H, i, r, -c)
            _add_row(U, i, r, -c)
        r += 1
    return H, U


def row_span_basis(rows: Sequence[Sequence[int]]) -> Matrix:
    """HNF basis (nonzero rows) of the Z-span of ``rows``."""
    if not rows:
        return []
    H, _ = hermite_normal_form(rows)
    return [row for row in H if any(row)]


def rank(M: Sequence[Sequence]) -> int:
    return len(_echelon(M)[0])


def _echelon(M):
    A = [[Fraction(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for j in range(n):
        k = next((i for i in range(r, m) if A[i][j]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = 1 / A[r][j]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][j]:
                c = A[i][j]
                A[i] = [x - c * y for x, y in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return pivots, A


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` exactly over Q.

    For singular but consistent systems a particular solution (free
    variables set to zero) is returned; inconsistent systems raise
    :class:`NoSolution`.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m:
        raise ValueError("dimension mismatch")
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    pivots, R = _echelon(aug)
    if n in pivots:
        raise NoSolution("system is inconsistent")
    x = [Fraction(0)] * n
    for r, j in enumerate(pivots):
        x[j] = R[r][n]
    return x


def inverse_rational(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    pivots, R = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R[:n]]


def inverse_unimodular(A: Sequence[Sequence[int]]) -> Matrix:
    inv = inverse_rational(A)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def integer_kernel_saturated(M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Z-basis of ``ker(M) ∩ Z^n`` returned as the columns of a matrix.

    The basis is the HNF of the kernel rows, so it is canonical.  The
    kernel of an integer matrix is automatically saturated in ``Z^n``.
    ``ncols`` gives ``n`` when ``M`` has no rows.
    """
    n = len(M[0]) if M else ncols
    if n is None:
        raise ValueError("ncols required for an empty matrix")
    if not M:
        return identity(n)
    H, U = hermite_normal_form(transpose(M))
    kernel_rows = [U[i] for i in range(n) if not any(H[i])]
    kernel_rows = row_span_basis(kernel_rows)
    if not kernel_rows:
        return [[] for _ in range(n)]
    return transpose(kernel_rows)


def common_denominator(values) -> int:
    den = 1
    for x in values:
        den = lcm(den, Fraction(x).denominator)
    return den


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def to_fractions(M):
    return [[Fraction(x) for x in row] for row in M]


def as_int_matrix(M) -> Matrix:
    out = []
    for row in M:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(int(x))
        out.append(r)
    return out
