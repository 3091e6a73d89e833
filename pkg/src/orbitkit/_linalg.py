"""Small exact linear algebra over the rationals and over F_p.

Matrices are lists of rows.  Everything here is sized for root-system work
(dimensions below ~100), where plain Fractions beat a CAS by a wide margin.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list:
    if not m:
        return []
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*m)]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    a = to_fractions(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence]) -> Matrix:
    """Basis of {x : m x = 0}, as a list of vectors."""
    if not m:
        return []
    cols = len(m[0])
    a, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -a[i][f]
        basis.append(v)
    return basis


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fractions(m))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def solve_left(v: Sequence, m: Sequence[Sequence]) -> list[Fraction] | None:
    """Solve x·m = v for x (m has one row per unknown); None if inconsistent."""
    k = len(m)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    # columns of m^T augmented with v
    aug = [[Fraction(m[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(len(v))]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for i, p in enumerate(pivots):
        x[p] = red[i][k]
    return x


def det(m: Sequence[Sequence]) -> Fraction:
    a = to_fractions(m)
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


# ---- arithmetic modulo a prime -------------------------------------------

def rref_mod(m: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    a = [[x % p for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        q = next((i for i in range(r, rows) if a[i][c]), None)
        if q is None:
            continue
        a[r], a[q] = a[q], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace_mod(m: Sequence[Sequence[int]], p: int, cols: int | None = None) -> list[list[int]]:
    if not m:
        return [[int(i == j) for j in range(cols)] for i in range(cols)]
    cols = len(m[0])
    a, pivots = rref_mod(m, p)
    basis = []
    for f in (c for c in range(cols) if c not in pivots):
        v = [0] * cols
        v[f] = 1
        for i, q in enumerate(pivots):
            v[q] = -a[i][f] % p
        basis.append(v)
    return basis
