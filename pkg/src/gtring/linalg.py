"""Exact Gaussian elimination over fractions (or any field-like scalars)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .signatures import DomainError


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact elimination with pivot search."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        pv = a[col][col]
        result = result * pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                row, prow = a[r], a[col]
                for c in range(col, n):
                    row[c] = row[c] - f * prow[c]
    return result * sign


def solve_consistent(rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve an (over-determined) consistent linear system exactly.

    Free variables are set to zero.  Raises :class:`DomainError` when the
    system is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            raise DomainError("inconsistent linear system")
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x
