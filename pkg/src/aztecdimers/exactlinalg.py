"""Exact linear algebra over arbitrary-precision integers and rationals.

Python's ``int`` and :class:`fractions.Fraction` supply the scalar types;
this module adds the dense matrix operations the counting layer needs:
fraction-free (Bareiss) determinants, minors, cofactor-based inverse
entries, and a Gauss-Jordan inverse over rationals used both as a
cross-check and as the fast path when a whole inverse is wanted.

Matrices at play are small (a desk-scale Kasteleyn matrix is at most a few
dozen rows), so everything is dense and single-threaded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class ShapeError(ValueError):
    """Operation applied to a matrix of the wrong shape."""


class SingularMatrixError(ZeroDivisionError):
    """Inverse of a singular matrix requested."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense matrix of Python ints."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if rows and any(len(row) != len(rows[0]) for row in rows):
            raise ShapeError("ragged rows")
        return cls(rows)

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = list(zip(*other.entries)) if other.entries else []
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                for row in self.entries
            )
        )


def det(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    The 0x0 determinant is 1 (empty product).
    """
    if not m.is_square:
        raise ShapeError(f"determinant of a {m.rows}x{m.cols} matrix")
    k = m.rows
    if k == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for c in range(k - 1):
        pivot = next((r for r in range(c, k) if a[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = -sign
        for r in range(c + 1, k):
            for j in range(c + 1, k):
                # Exact by the Bareiss identity; // never truncates here.
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
            a[r][c] = 0
        prev = a[c][c]
    return sign * a[k - 1][k - 1]


def minor(m: IntMatrix, drop_rows: Sequence[int], drop_cols: Sequence[int]) -> IntMatrix:
    """Submatrix with the listed rows and columns deleted, order preserved."""
    if len(drop_rows) != len(drop_cols):
        raise ShapeError("must delete as many rows as columns")
    for name, idxs, bound in (("row", drop_rows, m.rows), ("column", drop_cols, m.cols)):
        if len(set(idxs)) != len(idxs):
            raise IndexError(f"duplicate {name} index in {list(idxs)}")
        if any(not 0 <= i < bound for i in idxs):
            raise IndexError(f"{name} index out of range in {list(idxs)}")
    rset, cset = set(drop_rows), set(drop_cols)
    return IntMatrix(
        tuple(
            tuple(v for j, v in enumerate(row) if j not in cset)
            for i, row in enumerate(m.entries)
            if i not in rset
        )
    )


def inverse_entry(m: IntMatrix, i: int, j: int) -> Fraction:
    """Entry ``(i, j)`` of ``m^{-1}``: signed cofactor of ``(j, i)`` over det."""
    if not m.is_square:
        raise ShapeError("inverse of a non-square matrix")
    d = det(m)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    cof = (-1) ** ((i + j) % 2) * det(minor(m, [j], [i]))
    return Fraction(cof, d)


def invert(m: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Full inverse by Gauss-Jordan elimination over rationals."""
    if not m.is_square:
        raise ShapeError("inverse of a non-square matrix")
    k = m.rows
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(m.entries)]
    for c in range(k):
        pivot = next((r for r in range(c, k) if a[r][c] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for r in range(k):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [v - f * u for v, u in zip(a[r], a[c])]
    return tuple(tuple(row[k:]) for row in a)


def det_fractions(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a small rational matrix by Gaussian elimination."""
    k = len(rows)
    if any(len(row) != k for row in rows):
        raise ShapeError("determinant of a non-square matrix")
    if k == 0:
        return Fraction(1)
    a = [[Fraction(v) for v in row] for row in rows]
    result = Fraction(1)
    for c in range(k):
        pivot = next((r for r in range(c, k) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            result = -result
        result *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, k):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [v - f * u for v, u in zip(a[r], a[c])]
    return result
