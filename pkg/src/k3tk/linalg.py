"""Exact integer and rational linear algebra.

Matrices are lists of lists of ``int`` or ``Fraction``.  Nothing here touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


class LinAlgError(ValueError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list:
    n = len(a[0]) if a else 0
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(n)]


def congruence(basis: Sequence[Sequence[int]], gram: Sequence[Sequence[int]]) -> Matrix:
    """Gram matrix of the rows of ``basis`` under ``gram``: B G Bᵀ."""
    return matmul(matmul(basis, gram), transpose(basis))


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square system a·x = b over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise LinAlgError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def ldl(q: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Rational LDLᵀ of a symmetric positive definite matrix.

    Returns ``(mu, d)`` with ``q(x) = Σ d[i]·(x[i] + Σ_{j>i} mu[i][j]·x[j])²``.
    Raises :class:`LinAlgError` if ``q`` is not positive definite.
    """
    n = len(q)
    a = [[Fraction(x) for x in row] for row in q]
    mu = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        if a[i][i] <= 0:
            raise LinAlgError("matrix is not positive definite")
        d[i] = a[i][i]
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            if a[i][j] == 0:
                continue
            for k in range(j, n):
                a[j][k] -= mu[i][j] * a[i][k]
                a[k][j] = a[j][k]
    return mu, d


def is_positive_definite(q: Sequence[Sequence]) -> bool:
    try:
        ldl(q)
    except LinAlgError:
        return False
    return True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    return a, x0, y0


def column_hermite(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix, int]:
    """Column-style echelon form of an integer m×n matrix.

    Returns ``(h, u, uinv, r)`` with ``h = a·u``, ``u`` unimodular, ``uinv`` its
    inverse, and the last ``n − r`` columns of ``h`` zero (``r`` = rank).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(map(int, row)) for row in a]
    u = identity(n)
    uinv = identity(n)

    def colop(i: int, j: int, p: int, q: int, r: int, s: int) -> None:
        # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j), ps - qr = ±1
        for mat in (h, u):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i], row[j] = p * ci + q * cj, r * ci + s * cj
        # inverse acts on rows of uinv
        dt = p * s - q * r
        ri, rj = uinv[i], uinv[j]
        uinv[i] = [dt * (s * x - r * y) for x, y in zip(ri, rj)]
        uinv[j] = [dt * (p * y - q * x) for x, y in zip(ri, rj)]

    col = 0
    for row in range(m):
        if col >= n:
            break
        for j in range(col + 1, n):
            b = h[row][j]
            if b == 0:
                continue
            a0 = h[row][col]
            g, x, y = _xgcd(a0, b)
            # new col = x*col + y*colj ; new colj = (-b/g)*col + (a0/g)*colj
            colop(col, j, x, y, -b // g, a0 // g)
        if h[row][col] != 0:
            if h[row][col] < 0:
                _negate_col(h, u, uinv, col)
            col += 1
    return h, u, uinv, col


def _negate_col(h: Matrix, u: Matrix, uinv: Matrix, c: int) -> None:
    for mat in (h, u):
        for row in mat:
            row[c] = -row[c]
    uinv[c] = [-x for x in uinv[c]]


def integer_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """Basis (as rows) of the integer kernel {x ∈ ℤⁿ : a·x = 0}."""
    if not a:
        raise LinAlgError("empty matrix")
    n = len(a[0])
    _, u, _, r = column_hermite(a)
    return [[u[i][j] for i in range(n)] for j in range(r, n)]


def complete_basis(rows: Sequence[Sequence[int]], n: int) -> Matrix:
    """Unimodular n×n matrix whose first k rows span the same lattice as ``rows``.

    ``rows`` must span a saturated (primitive) sublattice of ℤⁿ.
    """
    k = len(rows)
    if k == 0:
        return identity(n)
    # rows = B (k×n). Column echelon: B·U = [H | 0], so B = [H | 0]·U⁻¹.
    h, _, uinv, r = column_hermite([list(r_) for r_ in rows])
    if r != k:
        raise LinAlgError("vectors are linearly dependent")
    if abs(det([row[:k] for row in h])) != 1:
        raise LinAlgError("sublattice is not primitive")
    return [list(row) for row in uinv]


def gcd_vector(v: Sequence[int]) -> int:
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def lll_gram(q: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> tuple[Matrix, Matrix]:
    """LLL-reduce a positive definite integer quadratic form given by its Gram.

    Returns ``(t, q')`` with ``t`` unimodular and ``q' = t·q·tᵀ`` reduced.
    """
    n = len(q)
    t = identity(n)
    g = [list(map(int, row)) for row in q]
    if n <= 1:
        return t, g

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = Fraction(g[i][j]) - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))
                mu[i][j] = s / bstar[j]
            bstar[i] = g[i][i] - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
            if bstar[i] <= 0:
                raise LinAlgError("matrix is not positive definite")
        return mu, bstar

    def add_row(i: int, j: int, c: int) -> None:
        # b_i <- b_i + c·b_j
        t[i] = [x + c * y for x, y in zip(t[i], t[j])]
        gii, gij, gjj = g[i][i], g[i][j], g[j][j]
        for k in range(n):
            if k != i:
                g[i][k] += c * g[j][k]
                g[k][i] = g[i][k]
        g[i][i] = gii + 2 * c * gij + c * c * gjj

    mu, bstar = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                c = -round(mu[k][j])
                add_row(k, j, c)
                mu, bstar = gso()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            t[k], t[k - 1] = t[k - 1], t[k]
            g[k], g[k - 1] = g[k - 1], g[k]
            for row in g:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, bstar = gso()
            k = max(k - 1, 1)
    return t, g
