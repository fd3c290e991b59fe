"""Exact linear algebra over Q by fraction-free (Bareiss) elimination.

Rows are first scaled to integers by their denominators' lcm; elimination
then runs entirely in Python ints. Pivoting is deterministic: at each step
the first row (in order) with a nonzero entry in the current column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Fractions

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RatMatrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def column(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * x for a, x in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows)]

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.to_rows()]


def _integer_rows(M: RatMatrix) -> tuple[list[list[int]], int]:
    """Rows scaled to integers, plus the product of the scale factors."""
    out = []
    scale = 1
    for r in M.to_rows():
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) for x in r])
        scale *= den
    return out, scale


def bareiss_echelon(A: list[list[int]], ncols: int):
    """In-place fraction-free row echelon form.

    Returns ``(pivot_columns, swaps)``. After return the first
    ``len(pivot_columns)`` rows of A are the echelon rows.
    """
    nrows = len(A)
    prev = 1
    r = 0
    pivots = []
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            swaps += 1
        piv_row = A[r]
        pv = piv_row[c]
        for i in range(r + 1, nrows):
            row = A[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - f * piv_row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j]) // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return pivots, swaps


def rank(M: RatMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    A, _ = _integer_rows(M)
    pivots, _ = bareiss_echelon(A, M.cols)
    return len(pivots)


def determinant(M: RatMatrix) -> Fraction:
    if M.rows != M.cols:
        raise ValueError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    A, scale = _integer_rows(M)
    pivots, swaps = bareiss_echelon(A, n)
    if len(pivots) < n:
        return Fraction(0)
    det = A[n - 1][n - 1]
    if swaps % 2:
        det = -det
    return Fraction(det, scale)


def _back_substitute(A, pivots, ncols, rhs=None):
    """Solutions of the echelon system: one per free column, or a particular one."""
    piv_set = set(pivots)
    free = [c for c in range(ncols) if c not in piv_set]

    def solve(x):
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = A[r]
            s = Fraction(rhs[r]) if rhs is not None else Fraction(0)
            for j in range(c + 1, ncols):
                if row[j] and x[j]:
                    s -= row[j] * x[j]
            x[c] = s / row[c]
        return x

    return free, solve


def nullspace(M: RatMatrix) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}; each vector scaled so its first nonzero entry is 1."""
    n = M.cols
    if M.rows == 0:
        A, pivots = [], []
    else:
        A, _ = _integer_rows(M)
        pivots, _ = bareiss_echelon(A, n)
    free, solve = _back_substitute(A, pivots, n)
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        x = solve(x)
        lead = next(v for v in x if v)
        basis.append([v / lead for v in x])
    return basis


def solve(M: RatMatrix, b: Sequence) -> list[Fraction] | None:
    """One solution of M x = b (free variables set to 0), or None if inconsistent."""
    if len(b) != M.rows:
        raise ValueError("dimension mismatch")
    n = M.cols
    aug = RatMatrix.from_rows([r + [Fraction(x)] for r, x in zip(M.to_rows(), b)], n + 1)
    A, _ = _integer_rows(aug)
    pivots, _ = bareiss_echelon(A, n + 1)
    if pivots and pivots[-1] == n:
        return None
    rhs = [A[r][n] for r in range(len(pivots))]
    _, back = _back_substitute(A, pivots, n, rhs)
    return back([Fraction(0)] * n)


def span_rank(vectors: Sequence[Sequence]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return rank(RatMatrix.from_rows(vectors))
