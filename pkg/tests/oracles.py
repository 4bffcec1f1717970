"""Brute-force reference computations, independent of the library's code paths."""

from __future__ import annotations

import itertools
from fractions import Fraction


def det(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det(minor)
    return total


def rank_by_minors(rows):
    """Largest k with a nonzero k x k minor."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    for k in range(min(m, n), 0, -1):
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                if det([[rows[i][j] for j in ci] for i in ri]):
                    return k
    return 0


def matmul(a, b):
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def multisets(items, size):
    """All multisets of ``size`` drawn from ``items`` (with repetition)."""
    return list(itertools.combinations_with_replacement(items, size))


def count_monomials(gens, n, d):
    """Count monomials of bidegree (n, d) over ``gens`` = [(degree, fermionic)], all weight 1."""
    count = 0
    for ms in itertools.combinations_with_replacement(range(len(gens)), d):
        if any(gens[i][1] and ms.count(i) > 1 for i in set(ms)):
            continue
        if sum(gens[i][0] for i in ms) == n:
            count += 1
    return count


def symmetric_algebra_dims(cohomology_gens, max_n, max_d):
    """dim of (n, d) pieces of the free graded-commutative algebra on ``cohomology_gens``.

    Each entry is ``(antifield_number, fermionic)`` of weight 1; this is the
    Kunneth answer for a complex with linear differential.
    """
    out = {}
    for d in range(max_d + 1):
        for n in range(-max_n, max_n + 1):
            c = count_monomials(cohomology_gens, n, d)
            if c:
                out[(n, d)] = c
    return out
