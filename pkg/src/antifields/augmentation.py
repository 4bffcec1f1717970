"""Identity detection and automatic higher-order antifields.

An identity at level ``L`` is a rational combination of the weight-1
generators of antifield number ``L`` whose differential vanishes and which
is not already the differential of something at level ``L + 1``.  Each one
gets a new generator one level up, of opposite parity, mapping onto it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactlinalg import Matrix, Vector
from .graded_algebra import Parity, Polynomial, enumerate_basis
from .kt_complex import (
    Complex,
    NilpotencyError,
    check_nilpotent,
    cohomology_table,
    degree_range,
    representative_vectors,
)


class StaleIdentityError(ValueError):
    """An identity row is not annihilated by the current differential."""


@dataclass(frozen=True)
class IdentitySet:
    """Rows ``R`` over the weight-1 generators at ``level`` with ``delta(R) == 0``."""

    level: int
    generators: tuple[str, ...]
    rows: tuple[Vector, ...]

    def __len__(self):
        return len(self.rows)

    def __bool__(self):
        return bool(self.rows)

    def combination(self, complex_: Complex, i: int) -> Polynomial:
        t = complex_.table
        return Polynomial({((t.id_of(name), 1),): x for name, x in zip(self.generators, self.rows[i]) if x})


@dataclass(frozen=True)
class AugmentationRound:
    level: int
    added: tuple[tuple[str, Parity], ...]
    identities: IdentitySet


@dataclass
class AugmentationReport:
    rounds: list[AugmentationRound] = field(default_factory=list)
    terminated: bool = False

    @property
    def added(self) -> list[tuple[str, Parity]]:
        return [g for r in self.rounds for g in r.added]

    def added_at(self, level: int) -> list[tuple[str, Parity]]:
        return [g for r in self.rounds if r.level + 1 == level for g in r.added]


def _linear_generators(c: Complex, level: int) -> tuple[str, ...]:
    names = []
    for m in enumerate_basis(c.table, level, 1):
        (gid, _), = m
        names.append(c.table[gid].name)
    return tuple(names)


def find_identities(c: Complex, level: int) -> IdentitySet:
    """Identities among the level-``level`` relations, modulo those already killed.

    Equivalent to canonical representatives of the weight-1 cohomology at
    antifield number ``level``.
    """
    names = _linear_generators(c, level)
    if not names:
        return IdentitySet(level, (), ())
    rows = tuple(representative_vectors(c, level, 1))
    return IdentitySet(level, names, rows)


def _linear_block(c: Complex, level: int, names: tuple[str, ...]) -> Matrix:
    """Matrix of delta on ``names``: one row per generator, one column per lower generator."""
    lower = [c.table[m[0][0]].name for m in enumerate_basis(c.table, level - 1, 1)]
    pos = {n: i for i, n in enumerate(lower)}
    entries = [Fraction(0)] * (len(names) * len(lower))
    for i, name in enumerate(names):
        for m, x in c.image_of(name):
            (gid, _), = m
            entries[i * len(lower) + pos[c.table[gid].name]] = x
    return Matrix(len(names), len(lower), entries)


def augment_once(c: Complex, ids: IdentitySet, name_prefix: str = "theta") -> Complex:
    """Add one generator per identity row, one level above ``ids.level``."""
    if not ids:
        raise ValueError("empty identity set: nothing to augment")
    if _linear_generators(c, ids.level) != ids.generators:
        raise StaleIdentityError(f"identity set was computed for different level-{ids.level} generators")
    block = _linear_block(c, ids.level, ids.generators)
    for k, r in enumerate(ids.rows):
        if len(r) != len(ids.generators):
            raise ValueError(f"identity row {k} has length {len(r)}, expected {len(ids.generators)}")
        if any(block.vecmul(r)):
            raise StaleIdentityError(f"identity row {k} is not annihilated by delta at level {ids.level}")
    parity = Parity(ids.level % 2).opposite()
    new_level = ids.level + 1
    specs = []
    images = []
    for k in range(len(ids)):
        name = f"{name_prefix}{new_level}_{k}"
        if name in c.table:
            raise ValueError(f"generator name {name!r} already exists; choose another prefix")
        specs.append((name, new_level, parity, 1))
        images.append(ids.combination(c, k))
    out = c.extended(specs, images)
    report = check_nilpotent(out)
    if not report.ok:
        raise NilpotencyError(f"augmented differential is not nilpotent at {report.generator}")
    return out


def resolve(c: Complex, max_level: int = 8, name_prefix: str = "theta") -> tuple[Complex, AugmentationReport]:
    """Kill weight-1 identities level by level, starting at level 1.

    Stops once no identities remain at or above the highest generator
    degree (``terminated``), or when the next generators would exceed
    ``max_level``.
    """
    report = check_nilpotent(c)
    if not report.ok:
        raise NilpotencyError(f"delta^2 != 0 on generator {report.generator}")
    out = AugmentationReport()
    level = 1
    while True:
        ids = find_identities(c, level)
        if ids:
            if level + 1 > max_level:
                return c, out
            c = augment_once(c, ids, name_prefix)
            added = tuple((g.name, g.parity) for g in c.table.generators[-len(ids):])
            out.rounds.append(AugmentationRound(level, added, ids))
        elif level >= degree_range(c)[1]:
            out.terminated = True
            return c, out
        level += 1


@dataclass
class AcyclicityReport:
    acyclic: bool
    offending: list[tuple[int, int, int]]
    h0: dict[int, int]

    @property
    def constants(self) -> int:
        """dim H(0, 0): constants are always closed and never exact."""
        return self.h0.get(0, 0)


def verify_acyclic(c: Complex, max_n: int, max_d: int) -> AcyclicityReport:
    """Check that cohomology vanishes outside antifield number 0.

    Positive degrees ``1..max_n`` and every nonempty negative block of the
    automatic window are checked for weights ``0..max_d``.  H^0 is reported
    per weight but does not affect the verdict.
    """
    tab = cohomology_table(c, max_n, max_d)
    offending = []
    h0 = {}
    for r in tab.rows:
        if r.n == 0:
            h0[r.d] = r.dim_H
        elif r.dim_H and r.n <= max_n:
            offending.append((r.n, r.d, r.dim_H))
    return AcyclicityReport(not offending, offending, h0)
