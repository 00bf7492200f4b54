"""Exact rational linear algebra.

Every scalar is a :class:`fractions.Fraction`, which is always stored in
lowest terms with a positive denominator.  Elimination picks, in each
column, the nonzero pivot with the smallest bit size to keep intermediate
numbers small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


class NonUnique(ArithmeticError):
    """The linear system is consistent but has a positive-dimensional solution set."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(value)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        entries = tuple(to_rational(v) for r in rows for v in r)
        return cls(len(rows), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def apply(self, x: Sequence) -> list:
        """Return the matrix-vector product ``A @ x``."""
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return [
            sum((a * b for a, b in zip(self.row(i), x) if a), Fraction(0))
            for i in range(self.rows)
        ]


def _size(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def row_reduce(rows: list, ncols: int | None = None) -> tuple[list, list]:
    """Bring ``rows`` (mutated in place) to reduced row echelon form.

    Only the first ``ncols`` columns are eligible as pivot columns; this lets
    callers reduce an augmented matrix without pivoting on the right-hand side.
    Returns ``(rows, pivot_columns)``; the first ``len(pivot_columns)`` rows are
    the nonzero rows.
    """
    if not rows:
        return rows, []
    if ncols is None:
        ncols = len(rows[0])
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            v = rows[i][c]
            if v and (best is None or _size(v) < _size(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r]
        inv = 1 / piv[c]
        if inv != 1:
            piv[:] = [v * inv if v else v for v in piv]
        nz = [j for j in range(c, len(piv)) if piv[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * piv[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(A: Matrix) -> int:
    """Exact rank over the rationals."""
    _, pivots = row_reduce(A.to_rows())
    return len(pivots)


def solve_linear(A: Matrix, b: Sequence) -> list:
    """Return the unique ``x`` with ``A @ x == b``.

    ``A`` may have more rows than columns as long as the system is consistent.
    Raises :class:`NoSolution` for an inconsistent system and
    :class:`NonUnique` when the system is consistent but rank deficient.
    """
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    aug = [row + [to_rational(v)] for row, v in zip(A.to_rows(), b)]
    aug, pivots = row_reduce(aug, ncols=A.cols)
    for row in aug[len(pivots):]:
        if row[-1]:
            raise NoSolution("inconsistent linear system")
    if len(pivots) < A.cols:
        raise NonUnique(f"rank {len(pivots)} < {A.cols} unknowns")
    x = [Fraction(0)] * A.cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return x


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out
