"""Fraction-free (Bareiss) elimination over ``Q[d]``."""
from __future__ import annotations

from typing import Sequence

from .algebra import Poly, RationalFunction

__all__ = ["bareiss_solve", "bareiss_inverse", "bareiss_det"]


def _forward(rows: list[list[Poly]], n: int) -> tuple[list[list[Poly]], Poly]:
    """In-place Bareiss on the first ``n`` columns; returns (rows, determinant)."""
    prev = Poly.constant(1)
    sign = 1
    for k in range(n):
        if rows[k][k].is_zero():
            for r in range(k + 1, n):
                if not rows[r][k].is_zero():
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                raise ZeroDivisionError("singular polynomial matrix")
        pivot = rows[k][k]
        for i in range(k + 1, n):
            a_ik = rows[i][k]
            row_i, row_k = rows[i], rows[k]
            for j in range(k + 1, len(row_i)):
                row_i[j] = (pivot * row_i[j] - a_ik * row_k[j]).exact_div(prev)
            row_i[k] = Poly()
        prev = pivot
    det = rows[n - 1][n - 1] if n else Poly.constant(1)
    return rows, det if sign > 0 else -det


def bareiss_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    rows = [list(r) for r in matrix]
    return _forward(rows, len(rows))[1]


def bareiss_solve(
    matrix: Sequence[Sequence[Poly]], rhs: Sequence[Sequence[Poly]]
) -> list[list[RationalFunction]]:
    """Solve ``A X = B`` exactly; ``rhs`` is ``B`` as a list of ``n`` rows."""
    n = len(matrix)
    if any(len(r) != n for r in matrix) or len(rhs) != n:
        raise ValueError("dimension mismatch")
    rows = [list(matrix[i]) + list(rhs[i]) for i in range(n)]
    rows, _ = _forward(rows, n)
    m = len(rhs[0]) if n else 0
    x: list[list[RationalFunction]] = [[RationalFunction()] * m for _ in range(n)]
    for c in range(m):
        for i in range(n - 1, -1, -1):
            acc = RationalFunction(rows[i][n + c])
            for j in range(i + 1, n):
                if not rows[i][j].is_zero() and not x[j][c].is_zero():
                    acc = acc - x[j][c] * rows[i][j]
            x[i][c] = acc / rows[i][i]
    return x


def bareiss_inverse(matrix: Sequence[Sequence[Poly]]) -> list[list[RationalFunction]]:
    n = len(matrix)
    one, zero = Poly.constant(1), Poly()
    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    return bareiss_solve(matrix, ident)
