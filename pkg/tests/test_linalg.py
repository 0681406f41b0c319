from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from k3tk import linalg

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def rect(r, c):
    return st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)


@given(st.integers(1, 5).flatmap(square))
def test_det_matches_sympy(a):
    assert linalg.det(a) == sympy.Matrix(a).det()


@given(st.integers(1, 4).flatmap(square), st.lists(small, min_size=4, max_size=4))
def test_solve_is_exact(a, b):
    b = b[: len(a)]
    if sympy.Matrix(a).det() == 0:
        with pytest.raises(linalg.LinAlgError):
            linalg.solve(a, b)
        return
    x = linalg.solve(a, b)
    assert all(isinstance(v, Fraction) for v in x)
    assert linalg.matvec(a, x) == [Fraction(v) for v in b]


@given(st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(lambda rc: rect(*rc)))
def test_column_hermite_factorization(a):
    h, u, uinv, rank = linalg.column_hermite(a)
    n = len(a[0])
    assert linalg.matmul(a, u) == h
    assert linalg.matmul(u, uinv) == linalg.identity(n)
    assert abs(linalg.det(u)) == 1
    assert rank == sympy.Matrix(a).rank()
    # columns beyond the rank vanish
    assert all(h[i][j] == 0 for i in range(len(a)) for j in range(rank, n))


@given(st.tuples(st.integers(1, 3), st.integers(2, 5)).flatmap(lambda rc: rect(*rc)))
def test_integer_kernel_is_saturated(a):
    k = linalg.integer_kernel(a)
    m = sympy.Matrix(a)
    assert len(k) == m.cols - m.rank()
    for v in k:
        assert linalg.matvec(a, v) == [0] * len(a)
    if k:
        # a basis of a saturated sublattice has coprime maximal minors
        minors = sympy.Matrix(k)
        g = 0
        from itertools import combinations

        for cols in combinations(range(minors.cols), minors.rows):
            g = sympy.gcd(g, minors[:, list(cols)].det())
        assert abs(g) == 1


def test_complete_basis_extends_primitive_rows():
    rows = [[1, 2, 3, 4], [0, 1, 1, 1]]
    u = linalg.complete_basis(rows, 4)
    assert abs(linalg.det(u)) == 1
    with pytest.raises(linalg.LinAlgError):
        linalg.complete_basis([[2, 4, 0, 0]], 4)


def test_ldl_reconstructs_form():
    q = [[4, 2, 0], [2, 3, 1], [0, 1, 2]]
    mu, d = linalg.ldl(q)
    x = [1, -2, 3]
    direct = sum(x[i] * q[i][j] * x[j] for i in range(3) for j in range(3))
    via = sum(d[i] * (x[i] + sum(mu[i][j] * x[j] for j in range(i + 1, 3))) ** 2 for i in range(3))
    assert direct == via
    assert not linalg.is_positive_definite([[1, 2], [2, 1]])


@given(st.integers(2, 5).flatmap(square))
def test_lll_is_unimodular_congruence(a):
    # positive definite Gram from a random basis plus a diagonal shift
    n = len(a)
    q = [[sum(a[i][k] * a[j][k] for k in range(n)) + (n + 1) * (i == j) for j in range(n)] for i in range(n)]
    t, red = linalg.lll_gram(q)
    assert abs(linalg.det(t)) == 1
    assert linalg.congruence(t, q) == red
    mu, b = _gram_schmidt(red)
    for i in range(n):
        for j in range(i):
            assert abs(mu[i][j]) <= Fraction(1, 2)
    for k in range(1, n):
        assert b[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * b[k - 1]


def _gram_schmidt(q):
    n = len(q)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (q[i][j] - sum(mu[j][k] * mu[i][k] * b[k] for k in range(j))) / b[j]
        b[i] = q[i][i] - sum(mu[i][k] ** 2 * b[k] for k in range(i))
    return mu, b
