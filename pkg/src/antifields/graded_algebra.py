"""Free graded-supercommutative algebra over the rationals.

A monomial is a tuple of ``(generator_id, exponent)`` pairs with strictly
increasing ids.  The canonical order of factors is generator id order, and
every sign in the package is measured against it.  Fermionic generators
square to zero, so they only ever appear with exponent 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[tuple[int, int], ...]

ONE: Monomial = ()


class Parity(enum.IntEnum):
    BOSONIC = 0
    FERMIONIC = 1

    def opposite(self) -> Parity:
        return Parity(1 - self)


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    antifield_number: int
    parity: Parity
    weight: int = 1

    @property
    def fermionic(self) -> bool:
        return self.parity is Parity.FERMIONIC


class GeneratorTable:
    """An ordered, immutable set of generators.

    Ids are dense and equal to the position in the table; names are unique.
    """

    def __init__(self, generators: Iterable[Generator] = ()):
        gens = tuple(generators)
        names = {}
        for i, g in enumerate(gens):
            if g.id != i:
                raise ValueError(f"generator {g.name!r} has id {g.id}, expected {i}")
            if g.name in names:
                raise ValueError(f"duplicate generator name {g.name!r}")
            if g.weight < 1:
                raise ValueError(f"generator {g.name!r} has weight {g.weight}; weights must be >= 1")
            names[g.name] = i
        self.generators = gens
        self._index = names
        self._fermionic = tuple(g.fermionic for g in gens)

    @classmethod
    def build(cls, specs: Iterable[tuple]) -> GeneratorTable:
        """From ``(name, antifield_number, parity[, weight])`` tuples."""
        gens = []
        for i, s in enumerate(specs):
            name, n, parity, *rest = s
            gens.append(Generator(i, name, int(n), Parity(parity), int(rest[0]) if rest else 1))
        return cls(gens)

    def extended(self, specs: Iterable[tuple]) -> GeneratorTable:
        """New table with extra generators appended after the existing ones."""
        gens = list(self.generators)
        for s in specs:
            name, n, parity, *rest = s
            gens.append(Generator(len(gens), name, int(n), Parity(parity), int(rest[0]) if rest else 1))
        return GeneratorTable(gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __getitem__(self, key: int | str) -> Generator:
        if isinstance(key, str):
            return self.generators[self._index[key]]
        return self.generators[key]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def id_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def is_fermionic(self, gid: int) -> bool:
        return self._fermionic[gid]

    def __eq__(self, other):
        if not isinstance(other, GeneratorTable):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"GeneratorTable({[g.name for g in self.generators]})"

    # -- gradings of monomials -------------------------------------------

    def antifield_number(self, m: Monomial) -> int:
        return sum(e * self.generators[g].antifield_number for g, e in m)

    def weight(self, m: Monomial) -> int:
        return sum(e * self.generators[g].weight for g, e in m)

    def parity(self, m: Monomial) -> Parity:
        return Parity(sum(e for g, e in m if self._fermionic[g]) % 2)

    def bidegree(self, m: Monomial) -> tuple[int, int]:
        return self.antifield_number(m), self.weight(m)

    def monomial(self, *names: str) -> Polynomial:
        """The product of the named generators, in the order given."""
        sign_mono = normalize(self, [self.id_of(n) for n in names])
        if sign_mono is None:
            return Polynomial()
        sign, m = sign_mono
        return Polynomial({m: sign})

    def gen(self, name: str) -> Polynomial:
        return Polynomial({((self.id_of(name), 1),): Fraction(1)})

    def format_monomial(self, m: Monomial) -> str:
        if not m:
            return "1"
        return "·".join(
            self.generators[g].name if e == 1 else f"{self.generators[g].name}^{e}" for g, e in m
        )

    def format(self, p: Polynomial) -> str:
        if not p:
            return "0"
        parts = []
        for m, c in sorted(p.terms.items()):
            mono = self.format_monomial(m)
            mag = abs(c)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}·{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


class Polynomial:
    """Finite rational combination of canonical monomials.

    Addition and scalar multiplication live here; products need the
    generator parities and go through :func:`multiply`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def constant(cls, c=1) -> Polynomial:
        return cls({ONE: c})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self.terms.items()})

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        return Polynomial({m: c * v for m, v in self.terms.items()})

    def __rmul__(self, c) -> Polynomial:
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({self.terms!r})"


def normalize(table: GeneratorTable, ids: Sequence[int]) -> tuple[int, Monomial] | None:
    """Bring a word of generator ids into canonical order.

    Returns ``(sign, monomial)`` where the sign counts transpositions of
    fermionic pairs, or ``None`` when a fermion repeats (the product is zero).
    """
    n = len(table)
    for g in ids:
        if not 0 <= g < n:
            raise ValueError(f"unknown generator id {g}")
    ferm = [g for g in ids if table.is_fermionic(g)]
    if len(set(ferm)) != len(ferm):
        return None
    inversions = sum(1 for i in range(len(ferm)) for j in range(i + 1, len(ferm)) if ferm[i] > ferm[j])
    counts: dict[int, int] = {}
    for g in ids:
        counts[g] = counts.get(g, 0) + 1
    return (-1 if inversions % 2 else 1), tuple(sorted(counts.items()))


def multiply_monomials(table: GeneratorTable, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
    """Product of two canonical monomials as ``(sign, monomial)`` or ``None``."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    fer = table._fermionic
    out = []
    sign = 1
    # number of fermionic factors of ``a`` not yet emitted
    pending = sum(1 for g, _ in a if fer[g])
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ga, ea = a[i]
        gb, eb = b[j]
        if ga < gb:
            out.append(a[i])
            if fer[ga]:
                pending -= 1
            i += 1
        elif gb < ga:
            out.append(b[j])
            if fer[gb] and pending % 2:
                sign = -sign
            j += 1
        else:
            if fer[ga]:
                return None
            out.append((ga, ea + eb))
            i += 1
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return sign, tuple(out)


def multiply(table: GeneratorTable, p: Polynomial, q: Polynomial) -> Polynomial:
    out: dict[Monomial, Fraction] = {}
    for ma, ca in p.terms.items():
        for mb, cb in q.terms.items():
            r = multiply_monomials(table, ma, mb)
            if r is None:
                continue
            s, m = r
            out[m] = out.get(m, 0) + (ca * cb if s > 0 else -ca * cb)
    return Polynomial(out)


def product(table: GeneratorTable, *factors: Polynomial) -> Polynomial:
    out = Polynomial.constant()
    for f in factors:
        out = multiply(table, out, f)
    return out


@lru_cache(maxsize=64)
def graded_pieces(table: GeneratorTable, weight: int) -> dict[int, tuple[Monomial, ...]]:
    """All monomials of the given total weight, grouped by antifield number.

    Monomials are produced in lexicographic order of their exponent vectors
    read in generator order (higher exponents of earlier generators first).
    """
    gens = table.generators
    ngen = len(gens)
    pieces: dict[int, list[Monomial]] = {}
    factors: list[tuple[int, int]] = []

    def rec(start: int, remaining: int, n: int):
        if remaining == 0:
            pieces.setdefault(n, []).append(tuple(factors))
            return
        for gid in range(start, ngen):
            g = gens[gid]
            if g.weight > remaining:
                continue
            emax = 1 if g.fermionic else remaining // g.weight
            for e in range(emax, 0, -1):
                factors.append((gid, e))
                rec(gid + 1, remaining - e * g.weight, n + e * g.antifield_number)
                factors.pop()

    if weight < 0:
        raise ValueError("weight must be non-negative")
    rec(0, weight, 0)
    return {n: tuple(ms) for n, ms in pieces.items()}


def enumerate_basis(table: GeneratorTable, antifield_number: int, weight: int) -> list[Monomial]:
    """Every monomial of bidegree ``(antifield_number, weight)``, in a fixed order."""
    return list(graded_pieces(table, weight).get(antifield_number, ()))
