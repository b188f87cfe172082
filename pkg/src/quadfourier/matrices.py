"""Rectangular matrices over a finite field, row-major, immutable.

Shared by the group models (SL2, SLn mirabolic blocks, SL3, Sp4).
Determinant and inverse run Gaussian elimination over the field, which
is exact and fast at the sizes used here (n <= 4).
"""

from __future__ import annotations

import random

from .fields import FieldElement, FieldSpec


class RectMatrix:
    """rows x cols matrix of FieldElement, entries row-major."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, rows: int, cols: int, entries):
        entries = tuple(spec.element(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "RectMatrix":
        return cls(
            spec, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)]
        )

    @classmethod
    def zero(cls, spec: FieldSpec, rows: int, cols: int) -> "RectMatrix":
        return cls(spec, rows, cols, [0] * (rows * cols))

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows) -> "RectMatrix":
        rows = [list(r) for r in rows]
        return cls(spec, len(rows), len(rows[0]), [e for r in rows for e in r])

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "RectMatrix":
        return RectMatrix(
            self.spec,
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __matmul__(self, other: "RectMatrix") -> "RectMatrix":
        if self.cols != other.rows or self.spec != other.spec:
            raise ValueError("matrix shape/field mismatch")
        zero = self.spec.zero()
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self[i, k] * other[k, j]
                out.append(acc)
        return RectMatrix(self.spec, self.rows, other.cols, out)

    def __mul__(self, other):
        if isinstance(other, RectMatrix):
            return self @ other
        return RectMatrix(
            self.spec,
            self.rows,
            self.cols,
            [e * self.spec.element(other) for e in self.entries],
        )

    def __add__(self, other: "RectMatrix") -> "RectMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch")
        return RectMatrix(
            self.spec,
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other: "RectMatrix") -> "RectMatrix":
        return self + (other * (-1))

    def __neg__(self):
        return self * (-1)

    def det(self) -> FieldElement:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(self.row(i)) for i in range(n)]
        det = self.spec.one()
        for col in range(n):
            pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if pivot is None:
                return self.spec.zero()
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            det = det * a[col][col]
            inv = a[col][col].inverse()
            for r in range(col + 1, n):
                factor = a[r][col] * inv
                if factor.is_zero():
                    continue
                for c in range(col, n):
                    a[r][c] = a[r][c] - factor * a[col][c]
        return det

    def inverse(self) -> "RectMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        spec = self.spec
        a = [list(self.row(i)) + [spec.one() if i == j else spec.zero() for j in range(n)]
             for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if pivot is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[pivot] = a[pivot], a[col]
            inv = a[col][col].inverse()
            a[col] = [e * inv for e in a[col]]
            for r in range(n):
                if r == col or a[r][col].is_zero():
                    continue
                factor = a[r][col]
                a[r] = [e - factor * pc for e, pc in zip(a[r], a[col])]
        return RectMatrix(spec, n, n, [a[i][n + j] for i in range(n) for j in range(n)])

    def trace(self) -> FieldElement:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = self.spec.zero()
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def enc(self) -> int:
        """Row-major radix-q encoding; fixes matrix-space enumeration order."""
        code = 0
        for e in self.entries:
            code = code * self.spec.q + e.enc
        return code

    def __eq__(self, other):
        return (
            isinstance(other, RectMatrix)
            and self.spec == other.spec
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.spec, self.rows, self.cols, self.entries))

    def __repr__(self):
        rows = "; ".join(
            " ".join(str(e) for e in self.row(i)) for i in range(self.rows)
        )
        return f"[{rows}]"


def random_matrix(spec: FieldSpec, rows: int, cols: int, rng: random.Random) -> RectMatrix:
    return RectMatrix(
        spec, rows, cols, [rng.randrange(spec.q) for _ in range(rows * cols)]
    )


def random_invertible(spec: FieldSpec, n: int, rng: random.Random) -> RectMatrix:
    while True:
        m = random_matrix(spec, n, n, rng)
        if not m.det().is_zero():
            return m


def random_unimodular(spec: FieldSpec, n: int, rng: random.Random) -> RectMatrix:
    """Random element of SL_n(F_q): invertible sample with row 0 rescaled."""
    m = random_invertible(spec, n, rng)
    fix = m.det().inverse()
    entries = list(m.entries)
    for j in range(n):
        entries[j] = entries[j] * fix
    return RectMatrix(spec, n, n, entries)
