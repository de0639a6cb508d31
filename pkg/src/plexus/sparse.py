"""Sparse matrices whose columns hold at most one or a few signed entries.

Every Clifford word acts on the classical basis with at most one nonzero
entry per column, so these stay small even at 65536 dimensions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

from . import kernels


class SignedPermutation:
    """Invertible matrix with exactly one ``+-1`` per column.

    Column ``c`` is ``signs[c] * e[rows[c]]``.
    """

    __slots__ = ("rows", "signs")
    __hash__ = None

    def __init__(self, rows, signs):
        rows = np.asarray(rows, dtype=np.int64)
        signs = np.asarray(signs, dtype=np.int8)
        if rows.shape != signs.shape:
            raise ValueError("rows and signs differ in shape")
        if np.any(signs == 0) or not np.array_equal(np.sort(rows), np.arange(rows.size)):
            raise ValueError("not a signed permutation")
        rows.flags.writeable = False
        signs.flags.writeable = False
        self.rows = rows
        self.signs = signs

    @classmethod
    def identity(cls, dim: int) -> SignedPermutation:
        return cls(np.arange(dim), np.ones(dim, dtype=np.int8))

    @property
    def dim(self) -> int:
        return int(self.rows.size)

    def __matmul__(self, other: SignedPermutation) -> SignedPermutation:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return SignedPermutation(*kernels.compose(self.rows, self.signs, other.rows, other.signs))

    def __neg__(self) -> SignedPermutation:
        return SignedPermutation(self.rows, -self.signs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        return np.array_equal(self.rows, other.rows) and np.array_equal(self.signs, other.signs)

    @property
    def T(self) -> SignedPermutation:
        rows = np.empty_like(self.rows)
        signs = np.empty_like(self.signs)
        rows[self.rows] = np.arange(self.dim)
        signs[self.rows] = self.signs
        return SignedPermutation(rows, signs)

    def inverse(self) -> SignedPermutation:
        return self.T

    def symmetry(self) -> int:
        """+1 if symmetric, -1 if skew, 0 otherwise."""
        t = self.T
        if t == self:
            return 1
        if t == -self:
            return -1
        return 0

    def scalar_square(self) -> int:
        """``s`` if the square is ``s`` times the identity, else 0."""
        sq = self @ self
        if not np.array_equal(sq.rows, np.arange(self.dim)):
            return 0
        if np.all(sq.signs == 1):
            return 1
        if np.all(sq.signs == -1):
            return -1
        return 0

    def entry(self, i: int, j: int) -> int:
        return int(self.signs[j]) if self.rows[j] == i else 0

    def dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        out[self.rows, np.arange(self.dim)] = self.signs
        return out

    def to_scipy(self) -> sp.csc_matrix:
        n = self.dim
        return sp.csc_matrix((self.signs.astype(np.int64), (self.rows, np.arange(n))), shape=(n, n))

    def triplets(self) -> Iterable[tuple[int, int, int]]:
        """``(row, column, sign)`` triples in column order."""
        for c in range(self.dim):
            yield int(self.rows[c]), c, int(self.signs[c])

    def __repr__(self) -> str:
        return f"SignedPermutation(dim={self.dim})"


class SignedSparseMatrix:
    """Square sparse matrix with exact rational entries, stored by column."""

    __slots__ = ("dimension", "columns")
    __hash__ = None

    def __init__(self, dimension: int, columns: Mapping[int, Mapping[int, Fraction]] | None = None):
        self.dimension = dimension
        self.columns: dict[int, dict[int, Fraction]] = {}
        for c, col in (columns or {}).items():
            kept = {r: Fraction(v) for r, v in col.items() if v}
            if kept:
                self.columns[c] = kept

    def add_entry(self, row: int, col: int, value) -> None:
        column = self.columns.setdefault(col, {})
        v = column.get(row, 0) + Fraction(value)
        if v:
            column[row] = v
        else:
            column.pop(row, None)
            if not column:
                del self.columns[col]

    def column(self, c: int) -> dict[int, Fraction]:
        return dict(self.columns.get(c, {}))

    def apply(self, vector: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Image of a sparse vector given as ``{index: value}``."""
        out: dict[int, Fraction] = {}
        for c, x in vector.items():
            for r, v in self.columns.get(c, {}).items():
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns.values())

    def dense(self) -> np.ndarray:
        out = np.full((self.dimension, self.dimension), Fraction(0), dtype=object)
        for c, col in self.columns.items():
            for r, v in col.items():
                out[r, c] = v
        return out

    def to_scipy(self) -> sp.csc_matrix:
        rows, cols, vals = [], [], []
        for c, col in self.columns.items():
            for r, v in col.items():
                rows.append(r)
                cols.append(c)
                vals.append(float(v))
        n = self.dimension
        return sp.csc_matrix((vals, (rows, cols)), shape=(n, n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedSparseMatrix):
            return NotImplemented
        return self.dimension == other.dimension and self.columns == other.columns

    def __repr__(self) -> str:
        return f"SignedSparseMatrix(dim={self.dimension}, nnz={self.nnz})"
