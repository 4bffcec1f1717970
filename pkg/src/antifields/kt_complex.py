"""Koszul-Tate / BV complexes: the differential, its blocks and cohomology.

The differential is an odd derivation of antifield number -1 that preserves
weight, so the algebra splits into finite blocks ``C(n, d)`` indexed by
antifield number ``n`` and weight ``d``.  Cohomology is computed block by
block; inside a block the sparse matrix of the differential is cut into
connected components and each component is row-reduced exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactlinalg import Matrix, complement_basis, kernel_basis, rank
from .graded_algebra import (
    GeneratorTable,
    Monomial,
    Parity,
    Polynomial,
    enumerate_basis,
    graded_pieces,
    multiply_monomials,
    normalize,
)


class GradingError(ValueError):
    """A differential image has the wrong antifield number, weight or parity."""


class NilpotencyError(ValueError):
    """Cohomology was requested for a rule with ``delta**2 != 0``."""


@dataclass(frozen=True)
class NilpotencyReport:
    ok: bool
    generator: str | None = None
    image: Polynomial | None = None

    def __bool__(self):
        return self.ok


class Complex:
    """A generator table together with the images of the generators under delta.

    ``delta`` maps generator ids (or names) to polynomials; generators that
    are absent are closed.  Grading constraints are checked on construction.
    """

    def __init__(self, table: GeneratorTable, delta: Mapping[int | str, Polynomial] | None = None):
        self.table = table
        images = [Polynomial() for _ in range(len(table))]
        for key, poly in (delta or {}).items():
            gid = table.id_of(key) if isinstance(key, str) else key
            if not 0 <= gid < len(table):
                raise KeyError(f"unknown generator id {gid}")
            images[gid] = poly
        self.images: tuple[Polynomial, ...] = tuple(images)
        self._check_grading()
        self._nilpotency: NilpotencyReport | None = None
        self._blocks: dict[tuple[int, int], list[dict[int, Fraction]]] = {}
        self._ranks: dict[tuple[int, int], int] = {}

    def _check_grading(self):
        t = self.table
        for g, img in zip(t.generators, self.images):
            for m, _ in img:
                for gid, e in m:
                    if not 0 <= gid < len(t):
                        raise GradingError(f"delta({g.name}) mentions unknown generator id {gid}")
                n, w = t.bidegree(m)
                if n != g.antifield_number - 1:
                    raise GradingError(
                        f"delta({g.name}): term {t.format_monomial(m)} has antifield number {n}, "
                        f"expected {g.antifield_number - 1}"
                    )
                if w != g.weight:
                    raise GradingError(
                        f"delta({g.name}): term {t.format_monomial(m)} has weight {w}, expected {g.weight}"
                    )
                if t.parity(m) == g.parity:
                    raise GradingError(
                        f"delta({g.name}): term {t.format_monomial(m)} has the same parity as {g.name}"
                    )

    @property
    def delta(self) -> dict[str, Polynomial]:
        """Nonzero images keyed by generator name, in id order."""
        return {g.name: img for g, img in zip(self.table.generators, self.images) if img}

    def image_of(self, name: str) -> Polynomial:
        return self.images[self.table.id_of(name)]

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.table == other.table and self.images == other.images

    def __hash__(self):
        return hash((self.table, self.images))

    def __repr__(self):
        return f"Complex({len(self.table)} generators, {sum(1 for p in self.images if p)} nonzero images)"

    def extended(self, specs: Sequence[tuple], images: Sequence[Polynomial]) -> Complex:
        """Append generators ``(name, n, parity[, weight])`` with the given images."""
        table = self.table.extended(specs)
        delta = {i: p for i, p in enumerate(self.images) if p}
        for k, p in enumerate(images):
            delta[len(self.table) + k] = p
        return Complex(table, delta)

    def permuted(self, order: Sequence[int]) -> Complex:
        """Same complex with generators re-created in the order ``order`` (old ids)."""
        old = self.table.generators
        table = GeneratorTable.build((old[i].name, old[i].antifield_number, old[i].parity, old[i].weight) for i in order)
        new_id = {o: k for k, o in enumerate(order)}
        delta = {}
        for o in order:
            out: dict[Monomial, Fraction] = {}
            for m, c in self.images[o]:
                ids = [new_id[g] for g, e in m for _ in range(e)]
                # the old canonical word, re-sorted in the new order
                r = normalize(table, ids)
                if r is None:
                    continue
                s, nm = r
                out[nm] = out.get(nm, 0) + s * c
            delta[new_id[o]] = Polynomial(out)
        return Complex(table, delta)

    # -- the derivation ---------------------------------------------------

    def delta_monomial(self, m: Monomial) -> dict[Monomial, Fraction]:
        t = self.table
        fer = t._fermionic
        images = self.images
        out: dict[Monomial, Fraction] = {}
        odd_before = 0
        for idx, (g, e) in enumerate(m):
            dg = images[g]
            if dg:
                coef = -e if odd_before % 2 else e
                prefix = m[:idx]
                rest = m[idx + 1:] if e == 1 else ((g, e - 1),) + m[idx + 1:]
                for mono, c in dg.terms.items():
                    r1 = multiply_monomials(t, prefix, mono)
                    if r1 is None:
                        continue
                    r2 = multiply_monomials(t, r1[1], rest)
                    if r2 is None:
                        continue
                    v = c * coef * r1[0] * r2[0]
                    out[r2[1]] = out.get(r2[1], 0) + v
            if fer[g]:
                odd_before += e
        return {k: v for k, v in out.items() if v}

    def sparse_block(self, n: int, d: int) -> list[dict[int, Fraction]]:
        """Columns of the (n, d) block as ``{row_index: coefficient}`` maps."""
        key = (n, d)
        if key not in self._blocks:
            cols = enumerate_basis(self.table, n, d)
            row_index = {m: i for i, m in enumerate(enumerate_basis(self.table, n - 1, d))}
            self._blocks[key] = [
                {row_index[m]: c for m, c in self.delta_monomial(col).items()} for col in cols
            ]
        return self._blocks[key]

    def block_rank(self, n: int, d: int) -> int:
        key = (n, d)
        if key not in self._ranks:
            cols = self.sparse_block(n, d)
            nrows = len(enumerate_basis(self.table, n - 1, d))
            total = 0
            for rows_idx, cols_idx in _components(cols, nrows):
                if len(cols_idx) == 1 or len(rows_idx) == 1:
                    total += 1
                    continue
                total += rank(_dense(cols, rows_idx, cols_idx))
            self._ranks[key] = total
        return self._ranks[key]


def _components(cols: list[dict[int, Fraction]], nrows: int) -> list[tuple[list[int], list[int]]]:
    """Connected components (row indices, column indices) of nonzero columns."""
    parent = list(range(nrows))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for col in cols:
        it = iter(col)
        first = next(it, None)
        if first is None:
            continue
        r0 = find(first)
        for r in it:
            rr = find(r)
            if rr != r0:
                parent[rr] = r0
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for j, col in enumerate(cols):
        if col:
            root = find(next(iter(col)))
            groups.setdefault(root, ([], []))[1].append(j)
    for r in range(nrows):
        root = find(r)
        if root in groups:
            groups[root][0].append(r)
    return list(groups.values())


def _dense(cols: list[dict[int, Fraction]], rows_idx: list[int], cols_idx: list[int]) -> Matrix:
    pos = {r: i for i, r in enumerate(rows_idx)}
    entries = [Fraction(0)] * (len(rows_idx) * len(cols_idx))
    w = len(cols_idx)
    for k, j in enumerate(cols_idx):
        for r, c in cols[j].items():
            entries[pos[r] * w + k] = c
    return Matrix(len(rows_idx), w, entries)


def apply_delta(c: Complex, p: Polynomial) -> Polynomial:
    out: dict[Monomial, Fraction] = {}
    for m, coef in p:
        for k, v in c.delta_monomial(m).items():
            out[k] = out.get(k, 0) + coef * v
    return Polynomial(out)


def check_nilpotent(c: Complex) -> NilpotencyReport:
    if c._nilpotency is None:
        report = NilpotencyReport(True)
        for g, img in zip(c.table.generators, c.images):
            dd = apply_delta(c, img)
            if dd:
                report = NilpotencyReport(False, g.name, dd)
                break
        c._nilpotency = report
    return c._nilpotency


def _require_nilpotent(c: Complex):
    report = check_nilpotent(c)
    if not report.ok:
        raise NilpotencyError(
            f"delta^2 != 0 on generator {report.generator}: {c.table.format(report.image)}"
        )


def block_matrix(c: Complex, n: int, d: int) -> Matrix:
    """Dense matrix of delta from C(n, d) to C(n-1, d).

    Columns follow ``enumerate_basis(n, d)``, rows ``enumerate_basis(n-1, d)``.
    """
    cols = c.sparse_block(n, d)
    nrows = len(enumerate_basis(c.table, n - 1, d))
    return _dense(cols, list(range(nrows)), list(range(len(cols))))


@dataclass(frozen=True)
class CohomologyRow:
    n: int
    d: int
    dim_chain: int
    dim_kernel: int
    dim_image: int
    dim_H: int

    @property
    def rank_out(self) -> int:
        return self.dim_chain - self.dim_kernel


def cohomology(
    c: Complex, n: int, d: int, want_representatives: bool = False
) -> tuple[CohomologyRow, list[Polynomial] | None]:
    """Cohomology of the (n, d) block.

    Returns the dimension row and, if requested, canonical cocycle
    representatives: kernel vectors reduced against the RREF of the image
    and then put in RREF themselves.
    """
    _require_nilpotent(c)
    t = c.table
    mid = enumerate_basis(t, n, d)
    out_cols = c.sparse_block(n, d)
    in_cols = c.sparse_block(n + 1, d)
    _check_image_in_kernel(out_cols, in_cols, n, d)
    dim_chain = len(mid)
    dim_kernel = dim_chain - c.block_rank(n, d)
    dim_image = c.block_rank(n + 1, d)
    row = CohomologyRow(n, d, dim_chain, dim_kernel, dim_image, dim_kernel - dim_image)
    if not want_representatives:
        return row, None
    reps = [_vector_to_poly(mid, v, idx) for v, idx in _representatives(out_cols, in_cols, dim_chain)]
    assert len(reps) == row.dim_H
    return row, reps


def _check_image_in_kernel(out_cols, in_cols, n, d):
    for k, col in enumerate(in_cols):
        acc: dict[int, Fraction] = {}
        for j, a in col.items():
            for i, b in out_cols[j].items():
                acc[i] = acc.get(i, 0) + a * b
        if any(acc.values()):
            raise NilpotencyError(f"image of block ({n + 1}, {d}) column {k} is not closed")


def _representatives(out_cols, in_cols, dim_mid):
    """Yield (vector over component, component mid indices) sorted by leading index."""
    parent = list(range(dim_mid))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    # mids sharing a lower row are linked; so are mids in one incoming column
    by_row: dict[int, int] = {}
    for j, col in enumerate(out_cols):
        for r in col:
            if r in by_row:
                union(by_row[r], j)
            else:
                by_row[r] = j
    for col in in_cols:
        it = iter(col)
        first = next(it, None)
        for j in it:
            union(first, j)
    groups: dict[int, list[int]] = {}
    for j in range(dim_mid):
        groups.setdefault(find(j), []).append(j)
    incoming: dict[int, list[int]] = {}
    for k, col in enumerate(in_cols):
        if col:
            incoming.setdefault(find(next(iter(col))), []).append(k)

    found = []
    for root, mids in groups.items():
        mid_pos = {j: k for k, j in enumerate(mids)}
        lo = sorted({r for j in mids for r in out_cols[j]})
        his = incoming.get(root, [])
        if not lo and not his:
            found.append(((Fraction(1),), mids))
            continue
        if lo:
            kern = kernel_basis(_dense(out_cols, lo, mids))
        else:
            kern = [tuple(Fraction(int(i == k)) for i in range(len(mids))) for k in range(len(mids))]
        image = []
        for k in his:
            v = [Fraction(0)] * len(mids)
            for j, a in in_cols[k].items():
                v[mid_pos[j]] = a
            image.append(tuple(v))
        for rep in complement_basis(kern, image, len(mids)):
            found.append((rep, mids))
    found.sort(key=lambda item: item[1][next(i for i, x in enumerate(item[0]) if x)])
    return found


def _vector_to_poly(basis: Sequence[Monomial], vec, idx) -> Polynomial:
    return Polynomial({basis[j]: x for j, x in zip(idx, vec) if x})


def representative_vectors(c: Complex, n: int, d: int) -> list[tuple[Fraction, ...]]:
    """Representatives of H(n, d) as coordinate vectors in ``enumerate_basis(n, d)``."""
    _require_nilpotent(c)
    mid = enumerate_basis(c.table, n, d)
    out = []
    for v, idx in _representatives(c.sparse_block(n, d), c.sparse_block(n + 1, d), len(mid)):
        full = [Fraction(0)] * len(mid)
        for j, x in zip(idx, v):
            full[j] = x
        out.append(tuple(full))
    return out


@dataclass
class CohomologyTable:
    table: GeneratorTable
    rows: list[CohomologyRow] = field(default_factory=list)
    representatives: dict[tuple[int, int], list[Polynomial]] | None = None

    def row(self, n: int, d: int) -> CohomologyRow | None:
        for r in self.rows:
            if (r.n, r.d) == (n, d):
                return r
        return None

    def dim_H(self, n: int, d: int) -> int:
        r = self.row(n, d)
        return r.dim_H if r else 0

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {(r.n, r.d): r.dim_H for r in self.rows if r.dim_H}

    def to_text(self) -> str:
        header = f"{'n':>4} {'d':>4} {'chain':>8} {'kernel':>8} {'image':>8} {'H':>6}"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            lines.append(
                f"{r.n:>4} {r.d:>4} {r.dim_chain:>8} {r.dim_kernel:>8} {r.dim_image:>8} {r.dim_H:>6}"
            )
            if self.representatives and self.representatives.get((r.n, r.d)):
                for p in self.representatives[(r.n, r.d)]:
                    lines.append(f"{'':>10}[{self.table.format(p)}]")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> list[dict]:
        out = []
        for r in self.rows:
            entry = {
                "n": r.n,
                "d": r.d,
                "dim_chain": r.dim_chain,
                "dim_kernel": r.dim_kernel,
                "dim_image": r.dim_image,
                "dim_H": r.dim_H,
            }
            if self.representatives is not None:
                entry["representatives"] = [
                    self.table.format(p) for p in self.representatives.get((r.n, r.d), [])
                ]
            out.append(entry)
        return out


def degree_range(c: Complex) -> tuple[int, int]:
    """Smallest and largest generator antifield numbers, clamped to include 0."""
    degs = [g.antifield_number for g in c.table]
    return min([0] + degs), max([0] + degs)


def weight_window(c: Complex, d: int) -> tuple[int, int]:
    """Antifield numbers outside this range have empty weight-``d`` blocks."""
    lo, hi = degree_range(c)
    return d * lo, d * hi


def cohomology_table(
    c: Complex,
    max_n: int,
    max_d: int,
    want_representatives: bool = False,
    min_n: int | None = None,
) -> CohomologyTable:
    """Rows for every nonempty block with ``min_n <= n <= max_n`` and ``d <= max_d``.

    ``min_n`` defaults to the bottom of the automatic window, so negative
    (ghost) degrees are covered when ghosts exist.  Empty blocks are omitted.
    """
    _require_nilpotent(c)
    reps = {} if want_representatives else None
    found = []
    for d in range(max_d + 1):
        lo, _ = weight_window(c, d)
        pieces = graded_pieces(c.table, d)
        start = lo if min_n is None else max(min_n, lo)
        for n in range(start, max_n + 1):
            if not pieces.get(n):
                continue
            row, r = cohomology(c, n, d, want_representatives)
            found.append(row)
            if reps is not None:
                reps[(n, d)] = r
    found.sort(key=lambda r: (r.n, r.d))
    return CohomologyTable(c.table, found, reps)


@dataclass(frozen=True)
class EulerCheck:
    d: int
    chain_euler: int
    cohomology_euler: int

    @property
    def equal(self) -> bool:
        return self.chain_euler == self.cohomology_euler


def euler_check(c: Complex, d: int, window: tuple[int, int] | None = None) -> EulerCheck:
    """Alternating sums of chain and cohomology dimensions in weight ``d``.

    Raises ``ValueError`` if a nonempty block lies outside ``window``.
    """
    pieces = graded_pieces(c.table, d)
    if window is None:
        window = weight_window(c, d)
    lo, hi = window
    outside = sorted(n for n, ms in pieces.items() if ms and not lo <= n <= hi)
    if outside:
        raise ValueError(f"window [{lo}, {hi}] too small for weight {d}: nonempty blocks at n={outside}")
    chain = 0
    coh = 0
    for n in range(lo, hi + 1):
        if not pieces.get(n):
            continue
        sign = -1 if n % 2 else 1
        row, _ = cohomology(c, n, d)
        chain += sign * row.dim_chain
        coh += sign * row.dim_H
    return EulerCheck(d, chain, coh)


def grassmann_number(c: Complex) -> int:
    """Bosonic minus fermionic generator count."""
    return sum(-1 if g.parity is Parity.FERMIONIC else 1 for g in c.table)
