from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from orbitkit import _linalg as la

square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))
rect = st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(
    lambda rc: st.lists(st.lists(st.integers(-3, 3), min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


@given(square)
def test_det_and_inverse_against_sympy(m):
    assert la.det(m) == sympy.Matrix(m).det()
    if la.det(m) != 0:
        assert la.matmul(la.inverse(m), m) == la.identity(len(m))


@given(rect)
def test_rank_nullity(m):
    ns = la.nullspace(m)
    assert la.rank(m) + len(ns) == len(m[0])
    assert la.rank(m) == sympy.Matrix(m).rank()
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@given(square, st.data())
def test_solve_left(m, data):
    x = data.draw(st.lists(st.integers(-3, 3), min_size=len(m), max_size=len(m)))
    v = la.vecmat(x, m)
    sol = la.solve_left(v, m)
    assert sol is not None and la.vecmat(sol, m) == v


@given(rect, st.sampled_from([2, 3, 5, 7]))
def test_mod_p_nullspace(m, p):
    for v in la.nullspace_mod(m, p):
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in m)
