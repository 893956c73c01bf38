"""Small exact linear algebra over the rationals: solve, invert, determinant.

Plain Gaussian elimination with pivot search; everything stays in
fractions.Fraction, so there is no conditioning to worry about, only
singularity.
"""

from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ValueError):
    """The system has no unique solution."""


def _rows(matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def solve(matrix, rhs) -> list[Fraction]:
    """Solve matrix * x = rhs exactly; raises SingularMatrixError if singular."""
    n = len(matrix)
    m = _rows(matrix)
    b = [Fraction(x) for x in rhs]
    if any(len(row) != n for row in m) or len(b) != n:
        raise ValueError("solve needs a square system")
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"singular matrix (no pivot in column {col})")
        m[col], m[pivot] = m[pivot], m[col]
        b[col], b[pivot] = b[pivot], b[col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
            b[r] -= factor * b[col]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc -= m[r][c] * x[c]
        x[r] = acc / m[r][r]
    return x


def determinant(matrix) -> Fraction:
    n = len(matrix)
    m = _rows(matrix)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


def invert(matrix) -> list[list[Fraction]]:
    """Exact inverse via column-by-column solves."""
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        cols.append(solve(matrix, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_vec(matrix, vec) -> list[Fraction]:
    return [sum((Fraction(a) * Fraction(v) for a, v in zip(row, vec)), Fraction(0)) for row in matrix]
