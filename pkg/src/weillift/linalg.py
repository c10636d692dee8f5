"""Small exact linear-algebra routines over ``Fraction`` entries."""

from __future__ import annotations

from fractions import Fraction


def rank(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    mat = [list(r) for r in rows]
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = Fraction(1) / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def det(matrix: list[list[Fraction]]) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    mat = [list(r) for r in matrix]
    sign = Fraction(1)
    result = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            sign = -sign
        result *= mat[col][col]
        inv = Fraction(1) / mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col] != 0:
                factor = mat[i][col] * inv
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[col])]
    return sign * result


def invert(matrix: list[list[Fraction]]) -> list[list[Fraction]] | None:
    """Exact inverse, or None when the matrix is singular."""
    n = len(matrix)
    mat = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, r in enumerate(matrix)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if pivot is None:
            return None
        mat[col], mat[pivot] = mat[pivot], mat[col]
        inv = Fraction(1) / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for i in range(n):
            if i != col and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[col])]
    return [row[n:] for row in mat]
