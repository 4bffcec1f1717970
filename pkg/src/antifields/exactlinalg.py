"""Exact dense linear algebra over the rationals.

Every routine works with :class:`fractions.Fraction` entries and never
rounds.  Forward elimination is fraction-free (integer row operations with
content removal); the reduced form is produced by integer back-substitution
and a single final division per row.  Pivoting is deterministic: the first
row with a nonzero entry in the current column.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


class Matrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(Fraction(x) for x in entries)
        if not entries and rows * cols:
            entries = (Fraction(0),) * (rows * cols)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            return Matrix(
                self.rows,
                other.cols,
                (sum(a * b for a, b in zip(self.row(i), col)) for i in range(self.rows) for col in ocols),
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} does not match {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def vecmul(self, v: Sequence) -> Vector:
        """Row vector times matrix, ``v @ self``."""
        if len(v) != self.rows:
            raise ValueError(f"vector of length {len(v)} does not match {self.rows} rows")
        return tuple(
            sum((v[i] * self[i, j] for i in range(self.rows)), Fraction(0)) for j in range(self.cols)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _forward(rows: list[list[int]], ncols: int) -> list[int]:
    """In-place fraction-free echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        pc = p[c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            if a:
                g = gcd(a, pc)
                s, t = pc // g, a // g
                rows[i] = _primitive([s * x - t * y for x, y in zip(rows[i], p)])
        pivots.append(c)
        r += 1
    return pivots


def _integer_rows(m: Matrix) -> list[list[int]]:
    return [_primitive(_integer_row(m.row(i))) for i in range(m.rows)]


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form.

    Returns ``(reduced, pivot_columns, rank)``.  ``reduced`` has the same
    shape as ``m``; zero rows sit at the bottom.
    """
    rows = _integer_rows(m)
    pivots = _forward(rows, m.cols)
    rank = len(pivots)
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        p = rows[r]
        pc = p[c]
        for i in range(r):
            a = rows[i][c]
            if a:
                g = gcd(a, pc)
                s, t = pc // g, a // g
                rows[i] = _primitive([s * x - t * y for x, y in zip(rows[i], p)])
    out = []
    for r in range(m.rows):
        if r < rank:
            lead = rows[r][pivots[r]]
            out.extend(Fraction(x, lead) for x in rows[r])
        else:
            out.extend([Fraction(0)] * m.cols)
    return Matrix(m.rows, m.cols, out), pivots, rank


def rank(m: Matrix) -> int:
    if not m.rows or not m.cols:
        return 0
    return len(_forward(_integer_rows(m), m.cols))


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of ``{v : m @ v == 0}``, one vector per free column."""
    red, pivots, r = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i, f]
        basis.append(tuple(v))
    return basis


def left_kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of ``{r : r @ m == 0}``."""
    return kernel_basis(m.transpose())


def row_space_basis(vectors: Sequence[Sequence], length: int | None = None) -> tuple[list[Vector], list[int]]:
    """Canonical (RREF) basis of the span of ``vectors`` and its pivot columns."""
    if length is None:
        if not vectors:
            return [], []
        length = len(vectors[0])
    if not vectors:
        return [], []
    red, pivots, r = rref(Matrix.from_rows(vectors, length))
    return [red.row(i) for i in range(r)], pivots


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    v = tuple(Fraction(x) for x in v)
    for b in basis:
        if len(b) != len(v):
            raise ValueError(f"dimension mismatch: basis vector of length {len(b)} vs vector of length {len(v)}")
    if not any(v):
        return True
    if not basis:
        return False
    m = Matrix.from_rows(list(basis), len(v))
    return rank(Matrix.from_rows(list(basis) + [v], len(v))) == rank(m)


def reduce_modulo(rows: Sequence[Vector], pivots: Sequence[int], v: Sequence) -> Vector:
    """Eliminate the pivot coordinates of an RREF basis from ``v``."""
    v = list(v)
    for row, c in zip(rows, pivots):
        a = v[c]
        if a:
            v = [x - a * y for x, y in zip(v, row)]
    return tuple(v)


def complement_basis(kernel: Sequence[Vector], image: Sequence[Vector], length: int) -> list[Vector]:
    """Canonical representatives of ``span(kernel) / span(image)``.

    ``image`` must lie inside ``span(kernel)``.  Each kernel vector is reduced
    against the RREF of the image and the survivors are put in RREF, so the
    result does not depend on which kernel basis was passed in.
    """
    img_rows, img_piv = row_space_basis(image, length)
    reduced = [reduce_modulo(img_rows, img_piv, k) for k in kernel]
    reduced = [r for r in reduced if any(r)]
    reps, _ = row_space_basis(reduced, length)
    return reps
