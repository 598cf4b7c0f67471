"""Exact rank of integer matrices by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Tuple[int, ...]  # row-major

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


MatrixLike = Union[IntMatrix, Sequence[Sequence[int]]]


def _rows_of(m: MatrixLike) -> Tuple[list, int]:
    if isinstance(m, IntMatrix):
        return m.to_rows(), m.cols
    rows = [list(r) for r in m]
    return rows, (len(rows[0]) if rows else 0)


def rank(m: MatrixLike) -> int:
    """Rank over the rationals, computed with integer arithmetic only.

    Bareiss elimination: after each pivot every remaining entry is a minor of
    the input, so the division by the previous pivot is exact.  The pivot is
    the first nonzero entry of the current column at or below the pivot row.
    """
    a, ncols = _rows_of(m)
    nrows = len(a)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        top = a[r]
        p = top[c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            if f:
                for j in range(c + 1, ncols):
                    ai[j] = (p * ai[j] - f * top[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    ai[j] = p * ai[j] // prev
            ai[c] = 0
        prev = p
        r += 1
    return r


def is_skew_symmetric(m: MatrixLike) -> bool:
    rows, ncols = _rows_of(m)
    if len(rows) != ncols:
        raise ValueError(f"not square: {len(rows)}x{ncols}")
    return all(rows[i][j] == -rows[j][i] for i in range(ncols) for j in range(i, ncols))
