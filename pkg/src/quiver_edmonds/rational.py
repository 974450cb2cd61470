"""Exact dense matrices over the rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError
from .kernels import det_int, rank_int


def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"inexact or unsupported entry {x!r}; use an int or a 'p/q' string")


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Fractions

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged rows")
        return cls(len(rows), cols, tuple(to_fraction(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([float(x) for x in self.entries], dtype=float).reshape(self.rows, self.cols)

    def denominator_lcm(self) -> int:
        return math.lcm(1, *(x.denominator for x in self.entries))

    def scaled_integer_rows(self) -> tuple[int, list[list[int]]]:
        """Return ``(L, rows)`` with ``rows == L * self`` integral."""
        L = self.denominator_lcm()
        return L, [[int(x * L) for x in row] for row in self.to_rows()]

    def max_bit_length(self) -> int:
        return max(
            (max(abs(x.numerator).bit_length(), x.denominator.bit_length()) for x in self.entries),
            default=0,
        )

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return RationalMatrix(self.rows, self.cols,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self + (-other)

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> RationalMatrix:
        c = to_fraction(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                s = Fraction(0)
                for t in range(k):
                    x = arow[t]
                    if x:
                        s += x * b[t * m + j]
                out.append(s)
        return RationalMatrix(n, m, tuple(out))

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows,
                              tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    # -- exact linear algebra ---------------------------------------------

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        L, rows = self.scaled_integer_rows()
        return Fraction(det_int(rows), L ** self.rows)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        # clear denominators row by row; rank is unaffected
        rows = []
        for row in self.to_rows():
            L = math.lcm(1, *(x.denominator for x in row))
            rows.append([int(x * L) for x in row])
        return rank_int(rows)

    def inverse(self) -> RationalMatrix:
        """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        inv = RationalMatrix.identity(n).to_rows()
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise ZeroDivisionError("matrix is singular")
            a[c], a[p] = a[p], a[c]
            inv[c], inv[p] = inv[p], inv[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            inv[c] = [x / piv for x in inv[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
        return RationalMatrix.from_rows(inv, n)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.to_rows())
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"


def block_sum(terms: Iterable[tuple[Fraction, RationalMatrix]], rows: int, cols: int) -> RationalMatrix:
    """Exact linear combination ``sum(c * A)`` of equally shaped matrices."""
    acc = [Fraction(0)] * (rows * cols)
    for c, m in terms:
        if m.shape != (rows, cols):
            raise ShapeError(f"term of shape {m.shape}, expected {(rows, cols)}")
        if c:
            for t, x in enumerate(m.entries):
                if x:
                    acc[t] += c * x
    return RationalMatrix(rows, cols, tuple(acc))
