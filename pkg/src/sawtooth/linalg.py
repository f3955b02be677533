"""Small exact linear algebra over Fraction and int."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    pass


def det_fraction(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    M = [[Fraction(x) for x in row] for row in matrix]
    n = len(M)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            det = -det
        piv = M[k][k]
        det *= piv
        for i in range(k + 1, n):
            f = M[i][k] / piv
            if f:
                Mi, Mk = M[i], M[k]
                for j in range(k + 1, n):
                    Mi[j] -= f * Mk[j]
    return det


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk = M[i], M[k]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (piv * Mi[j] - mik * Mk[j]) // prev
        prev = piv
    return sign * M[n - 1][n - 1]


def solve_fraction(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve A x = b exactly; raises SingularMatrixError when A is singular."""
    n = len(matrix)
    M = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            raise SingularMatrixError(f"matrix is singular (column {k})")
        M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        Mk = M[k]
        for j in range(k, n + 1):
            Mk[j] /= piv
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                Mi = M[i]
                for j in range(k, n + 1):
                    Mi[j] -= f * Mk[j]
    return [M[i][n] for i in range(n)]
