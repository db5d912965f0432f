"""Exact integer matrices (Python ints, no overflow)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence


class NotUnimodular(ArithmeticError):
    pass


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntegerMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(tuple(zip(*self.rows)))

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        cols = list(zip(*other.rows))
        return IntegerMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                                   for row in self.rows))

    def apply(self, vector: Sequence):
        """Matrix times a column of Z-module elements (ints or GroupElements)."""
        out = []
        for row in self.rows:
            acc = None
            for c, x in zip(row, vector):
                if c == 0:
                    continue
                term = c * x
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else 0 * vector[0])
        return out

    @cached_property
    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = len(self.rows)
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    @property
    def is_unimodular(self) -> bool:
        return self.is_square and self.det in (1, -1)

    def inverse(self) -> IntegerMatrix:
        """Integer inverse; raises NotUnimodular unless det = +-1."""
        if not self.is_unimodular:
            raise NotUnimodular(f"matrix is not unimodular (det = {self.det if self.is_square else 'n/a'})")
        n = len(self.rows)
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next(i for i in range(col, n) if a[i][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        inv = []
        for row in a:
            right = row[n:]
            if any(x.denominator != 1 for x in right):
                raise NotUnimodular("non-integral inverse")
            inv.append(tuple(int(x) for x in right))
        return IntegerMatrix(tuple(inv))

    def to_json(self) -> dict:
        out = {"rows": [[str(x) for x in row] for row in self.rows],
               "shape": [str(x) for x in self.shape]}
        if self.is_square:
            out["determinant"] = str(self.det)
            out["unimodular"] = self.is_unimodular
        return out
