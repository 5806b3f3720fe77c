"""Small exact linear algebra over the rationals (lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = to_matrix(m)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot = next((i for i in range(row, nrows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(nrows):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return a, pivots


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, pivots = rref(m)
    n = len(r[0])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = to_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return sign * result


def inverse(m: Sequence[Sequence]) -> Matrix | None:
    """Exact inverse, or None if singular."""
    a = to_matrix(m)
    n = len(a)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in r]


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in m]
