"""Small exact-rational matrix helpers.

Matrices are numpy object arrays holding :class:`fractions.Fraction`. They are
only used at desk scale (dimension <= 16, or 28 for Killing forms), where
object arithmetic is fast enough and every identity can be checked exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable

import numpy as np
import sympy


def fmat(rows: Iterable) -> np.ndarray:
    """Build an object matrix of Fractions from nested iterables or an int array."""
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


def identity(n: int) -> np.ndarray:
    out = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(n: int, m: int | None = None) -> np.ndarray:
    return np.full((n, n if m is None else m), Fraction(0), dtype=object)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b) - b.dot(a)


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b) + b.dot(a)


def is_zero(a: np.ndarray) -> bool:
    return all(v == 0 for v in a.flat)


def max_abs(a: np.ndarray) -> float:
    return float(max((abs(v) for v in a.flat), default=0))


def trace(a: np.ndarray) -> Fraction:
    return sum((a[i, i] for i in range(a.shape[0])), Fraction(0))


def to_float(a: np.ndarray) -> np.ndarray:
    return np.array(a, dtype=float)


def det(a: np.ndarray) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = a.shape[0]
    if n == 0:
        return Fraction(1)
    m = [[Fraction(v) for v in row] for row in a]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        result *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return sign * result


def solve(a: np.ndarray, b) -> list[Fraction]:
    """Solve ``a x = b`` exactly for square nonsingular ``a``."""
    n = a.shape[0]
    m = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def to_sympy(a: np.ndarray) -> sympy.Matrix:
    return sympy.Matrix(a.shape[0], a.shape[1],
                        [sympy.Rational(v.numerator, v.denominator) for v in (Fraction(x) for x in a.flat)])


def rank(a: np.ndarray) -> int:
    return to_sympy(a).rank()


def column_basis(a: np.ndarray) -> np.ndarray:
    """Exact basis of the column space, as the columns of a Fraction matrix."""
    cols = to_sympy(a).columnspace()
    if not cols:
        return zeros(a.shape[0], 0)
    out = zeros(a.shape[0], len(cols))
    for j, c in enumerate(cols):
        for i in range(a.shape[0]):
            v = c[i]
            out[i, j] = Fraction(int(v.p), int(v.q))
    return out


def exact_operator_norm(a: np.ndarray) -> Fraction | float:
    """Operator 2-norm; exact when ``a a^T`` is a rational square times the identity.

    Every generator in this package is a scaled signed permutation, so the
    exact branch is the one normally taken.
    """
    g = a.dot(a.T)
    lam = g[0, 0]
    if is_zero(g - lam * identity(a.shape[0])):
        num, den = lam.numerator, lam.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return float(lam) ** 0.5
    return float(np.linalg.norm(to_float(a), 2))
