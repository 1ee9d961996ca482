"""Fraction-free elimination over exact rings.

The routines here work for any commutative ring whose elements support ``+``,
``-``, ``*``, truth testing (nonzero) and exact division via ``/``.  Both
:class:`fractions.Fraction` and :class:`moprl.poly_core.Polynomial` qualify.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Any, Sequence

from .errors import NotNormalError


def bareiss_det(matrix: Sequence[Sequence[Any]], one: Any = Fraction(1)) -> Any:
    """Determinant by Bareiss elimination with row pivoting.

    Every intermediate quotient is exact in an integral domain, so no
    rational-function blowup occurs when the entries are polynomials.
    The empty matrix has determinant ``one``.
    """
    n = len(matrix)
    if n == 0:
        return one
    m = [list(row) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    negate = False
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    negate = not negate
                    break
            else:
                return one - one
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) / prev
            row_i[k] = one - one
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if negate else det


def det_rational(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix.

    Rows are first scaled to integers so the Bareiss recurrence runs on
    machine-native big integers; the row scalings are divided out at the end.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scale = 1
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row))
        scale *= d
        rows.append([x.numerator * (d // x.denominator) for x in row])
    return Fraction(_bareiss_int(rows), scale)


def _bareiss_int(m: list[list[int]]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve_rational(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve the square system ``a x = b`` exactly.

    Forward elimination is fraction-free (Bareiss on the integer-scaled
    augmented matrix); back substitution is exact rational.  A singular ``a``
    raises :class:`NotNormalError`.
    """
    n = len(a)
    if len(b) != n:
        raise ValueError("dimension mismatch")
    if n == 0:
        return []
    rows = []
    for row, rhs in zip(a, b):
        full = [Fraction(x) for x in row] + [Fraction(rhs)]
        if len(full) != n + 1:
            raise ValueError("matrix is not square")
        d = lcm(*(x.denominator for x in full))
        rows.append([x.numerator * (d // x.denominator) for x in full])
    prev = 1
    for k in range(n):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    break
            else:
                raise NotNormalError("singular system")
        pivot = rows[k][k]
        for i in range(k + 1, n):
            lead = rows[i][k]
            row_i = rows[i]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * pivot - lead * rows[k][j]) // prev
            row_i[k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        acc = Fraction(rows[k][n])
        for j in range(k + 1, n):
            acc -= rows[k][j] * x[j]
        x[k] = acc / rows[k][k]
    return x
