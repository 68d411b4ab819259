"""Dense exact linear algebra over GF(p^e).

Pivots are taken as the first nonzero entry in column order, so elimination is
deterministic and every witness built on top of it is reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from jumped_wenger.errors import NonSquareError, SingularMatrixError
from jumped_wenger.gf import FieldSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldMatrix:
    """Row-major matrix whose entries are ranks of one field."""

    field: FieldSpec
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(v) for v in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(entries)}"
            )
        if any(v < 0 or v >= self.field.q for v in entries):
            raise ValueError("matrix entries must be field ranks")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), ncols, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "FieldMatrix":
        return cls.from_rows(field, [[1 if r == c else 0 for c in range(n)] for r in range(n)])

    def row(self, r: int) -> List[int]:
        return list(self.entries[r * self.cols : (r + 1) * self.cols])

    def to_rows(self) -> List[List[int]]:
        return [self.row(r) for r in range(self.rows)]

    def column(self, c: int) -> List[int]:
        return [self.entries[r * self.cols + c] for r in range(self.rows)]

    def __getitem__(self, index: Tuple[int, int]) -> int:
        r, c = index
        return self.entries[r * self.cols + c]

    def apply(self, vector: Sequence[int]) -> List[int]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError(f"vector length {len(vector)} != {self.cols} columns")
        f = self.field
        out = []
        for r in range(self.rows):
            acc = 0
            for c, v in enumerate(vector):
                acc = f.add(acc, f.mul(self.entries[r * self.cols + c], v))
            out.append(acc)
        return out


def _echelon(field: FieldSpec, rows: List[List[int]]) -> Tuple[List[List[int]], List[int], int]:
    """Reduced row echelon form in place; returns (rows, pivot columns, swap count)."""
    f = field
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    swaps = 0
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot = next((k for k in range(r, nrows) if rows[k][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            swaps += 1
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, v) for v in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][c] != 0:
                factor = rows[k][c]
                rows[k] = [f.sub(a, f.mul(factor, b)) for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots, swaps


def determinant(matrix: FieldMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Each step divides exactly by the previous pivot, so the last entry of the
    reduced matrix is the determinant up to the sign of the row swaps.
    """
    if matrix.rows != matrix.cols:
        raise NonSquareError(f"determinant of a {matrix.rows}x{matrix.cols} matrix")
    f = matrix.field
    rows = matrix.to_rows()
    n = matrix.rows
    if n == 0:
        return 1
    negate = False
    previous = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if rows[r][k] != 0), None)
            if pivot is None:
                return 0
            rows[k], rows[pivot] = rows[pivot], rows[k]
            negate = not negate
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                cross = f.sub(f.mul(rows[r][c], rows[k][k]), f.mul(rows[r][k], rows[k][c]))
                rows[r][c] = f.div(cross, previous)
        previous = rows[k][k]
    det = rows[n - 1][n - 1]
    return f.neg(det) if negate else det


def rank(matrix: FieldMatrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    _, pivots, _ = _echelon(matrix.field, matrix.to_rows())
    return len(pivots)


def solve_unique(matrix: FieldMatrix, rhs: Sequence[int]) -> List[int]:
    """The unique x with matrix @ x = rhs."""
    if matrix.rows != matrix.cols:
        raise NonSquareError(f"unique solve needs a square matrix, got {matrix.rows}x{matrix.cols}")
    if len(rhs) != matrix.rows:
        raise ValueError("right-hand side length mismatch")
    augmented = [row + [b] for row, b in zip(matrix.to_rows(), rhs)]
    reduced, pivots, _ = _echelon(matrix.field, augmented)
    if pivots != list(range(matrix.cols)):
        raise SingularMatrixError("matrix is singular")
    return [reduced[r][-1] for r in range(matrix.rows)]


def nullspace_basis(matrix: FieldMatrix) -> List[List[int]]:
    """Basis of {t : matrix @ t = 0}; one vector per free column, free entry set to 1."""
    f = matrix.field
    if matrix.rows == 0:
        return [[1 if k == c else 0 for k in range(matrix.cols)] for c in range(matrix.cols)]
    reduced, pivots, _ = _echelon(f, matrix.to_rows())
    free = [c for c in range(matrix.cols) if c not in pivots]
    basis = []
    for fc in free:
        vector = [0] * matrix.cols
        vector[fc] = 1
        for r, pc in enumerate(pivots):
            vector[pc] = f.neg(reduced[r][fc])
        basis.append(vector)
    return basis


__all__ = ["FieldMatrix", "determinant", "rank", "solve_unique", "nullspace_basis"]
