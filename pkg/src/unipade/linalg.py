"""Determinants and linear solves over exact Gaussian rationals or floats."""

from __future__ import annotations

import numpy as np

from .gaussian import ONE, ZERO, GaussianRational

__all__ = ["det_exact", "det_float", "solve_exact", "SingularMatrix"]


class SingularMatrix(ArithmeticError):
    pass


def det_exact(M: list[list[GaussianRational]]) -> GaussianRational:
    """Bareiss fraction-free elimination; exact for any square matrix."""
    n = len(M)
    if n == 0:
        return ONE
    A = [list(row) for row in M]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return ZERO
        akk = A[k][k]
        inv_prev = 1 / prev
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) * inv_prev
            row_i[k] = ZERO
        prev = akk
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d


def det_float(M) -> complex:
    """Partially pivoted LU determinant."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 1 + 0j
    return complex(np.linalg.det(M))


def solve_exact(M: list[list[GaussianRational]], rhs: list[GaussianRational]) -> list[GaussianRational]:
    """Gauss-Jordan elimination with nonzero pivot search; raises on singularity."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            raise SingularMatrix(f"no pivot in column {k}")
        A[k], A[piv] = A[piv], A[k]
        inv = 1 / A[k][k]
        A[k] = [v * inv for v in A[k]]
        for i in range(n):
            if i != k and A[i][k]:
                f = A[i][k]
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return [A[i][n] for i in range(n)]
