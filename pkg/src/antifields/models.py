"""Builders for the concrete complexes: oscillator, Maxwell, 2D scalar, random.

Every builder returns a :class:`~antifields.kt_complex.Complex` with
weight-1 generators and a linear differential.  Momenta and frequencies are
integers so that on-shell modes are exact lattice points.

Random matrices come from a 64-bit linear congruential generator
(``x -> 6364136223846793005 * x + 1442695040888963407 mod 2**64``); each
draw uses the top 31 bits, ``x >> 33``, and entries are ``draw % 7 - 3``,
filled row-major, first the ``n x (n-p)`` factor and then the ``(n-p) x n``
factor.  The stream is seeded with the given seed itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exactlinalg import Matrix, kernel_basis, rank
from .graded_algebra import GeneratorTable, Parity, Polynomial
from .kt_complex import Complex

B = Parity.BOSONIC
F = Parity.FERMIONIC

METRIC = (1, -1, -1, -1)


def _lin(table: GeneratorTable, coeffs: Iterable[tuple[object, str]]) -> Polynomial:
    terms = {}
    for c, name in coeffs:
        m = ((table.id_of(name), 1),)
        terms[m] = terms.get(m, 0) + Fraction(c)
    return Polynomial(terms)


# -- harmonic oscillator on a frequency lattice ------------------------------


def _mode_list(modes) -> list[int]:
    if isinstance(modes, tuple) and len(modes) == 2:
        return list(range(modes[0], modes[1] + 1))
    return list(modes)


def build_oscillator(modes=range(-2, 3), omega: int = 1, with_ghosts: bool = False,
                     with_theta: bool = False) -> Complex:
    """Fourier modes of the oscillator, ``delta phi*(k) = (k^2 - omega^2) phi(k)``.

    ``modes`` is an iterable of integer frequencies or an inclusive
    ``(lo, hi)`` pair.  ``with_theta`` adds the second-order antifields
    ``theta(+-omega)``.  ``with_ghosts`` adds ghosts ``c(+-omega)`` at
    antifield number -1 with ``delta phi(+-omega) = c(+-omega)`` and always
    keeps the thetas.
    """
    ks = _mode_list(modes)
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if omega not in ks or -omega not in ks:
        raise ValueError(f"both +-{omega} must lie in the mode range {ks[0]}..{ks[-1]}")
    if len(set(ks)) != len(ks):
        raise ValueError("modes must be distinct")
    on_shell = sorted({-omega, omega})
    specs = [(f"phi({k})", 0, B) for k in ks] + [(f"phi*({k})", 1, F) for k in ks]
    if with_ghosts:
        specs += [(f"c({k})", -1, F) for k in on_shell]
    if with_theta or with_ghosts:
        specs += [(f"theta({k})", 2, B) for k in on_shell]
    t = GeneratorTable.build(specs)
    delta = {f"phi*({k})": _lin(t, [(k * k - omega * omega, f"phi({k})")]) for k in ks}
    if with_ghosts:
        for k in on_shell:
            delta[f"phi({k})"] = _lin(t, [(1, f"c({k})")])
    if with_theta or with_ghosts:
        for k in on_shell:
            delta[f"theta({k})"] = _lin(t, [(1, f"phi*({k})")])
    return Complex(t, delta)


# -- Maxwell on an integer momentum box --------------------------------------


def lower(k: Sequence[int]) -> tuple[int, ...]:
    return tuple(g * x for g, x in zip(METRIC, k))


def minkowski_square(k: Sequence[int]) -> int:
    return sum(g * x * x for g, x in zip(METRIC, k))


def is_lightlike(k: Sequence[int]) -> bool:
    return any(k) and minkowski_square(k) == 0


def _primitive_integer(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def spatial_transverse(k: Sequence[int]) -> list[tuple[int, ...]]:
    """Integer basis of time-free vectors whose spatial part is orthogonal to ``k``'s."""
    row = Matrix.from_rows([list(k[1:])], 3)
    return [(0,) + _primitive_integer(v) for v in kernel_basis(row)]


def lightlike_transverse(k: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two polarization vectors of a lightlike momentum.

    >>> lightlike_transverse((1, 0, 0, 1))
    ((0, 1, 0, 0), (0, 0, 1, 0))
    """
    k = tuple(k)
    if len(k) != 4:
        raise ValueError("k must be a 4-vector")
    if not any(k):
        raise ValueError("k = 0 has no transverse polarizations")
    if minkowski_square(k) != 0:
        raise ValueError(f"k = {k} is not lightlike (k^2 = {minkowski_square(k)})")
    e1, e2 = spatial_transverse(k)
    return e1, e2


def maxwell_operator(k: Sequence[int]) -> Matrix:
    """``E[mu][nu]`` with ``E_mu = sum_nu E[mu][nu] A_nu = k^2 A_mu - k_mu k^nu A_nu``."""
    k2 = minkowski_square(k)
    kl = lower(k)
    return Matrix(4, 4, ((k2 if mu == nu else 0) - kl[mu] * k[nu] for mu in range(4) for nu in range(4)))


def _ktag(k: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in k) + ")"


def _maxwell_specs(k, with_theta: bool):
    tag = _ktag(k)
    specs = [(f"c{tag}", -1, F)]
    specs += [(f"A{mu}{tag}", 0, B) for mu in range(4)]
    specs += [(f"A*{mu}{tag}", 1, F) for mu in range(4)]
    specs += [(f"zeta{tag}", 2, B)]
    if with_theta and is_lightlike(k):
        specs += [(f"theta1{tag}", 2, B), (f"theta2{tag}", 2, B)]
    return specs


def _maxwell_delta(t: GeneratorTable, k, with_theta: bool) -> dict[str, Polynomial]:
    tag = _ktag(k)
    kl = lower(k)
    E = maxwell_operator(k)
    delta = {}
    for mu in range(4):
        delta[f"A{mu}{tag}"] = _lin(t, [(kl[mu], f"c{tag}")])
        delta[f"A*{mu}{tag}"] = _lin(t, [(E[mu, nu], f"A{nu}{tag}") for nu in range(4)])
    delta[f"zeta{tag}"] = _lin(t, [(k[mu], f"A*{mu}{tag}") for mu in range(4)])
    if with_theta and is_lightlike(k):
        for i, eps in enumerate(lightlike_transverse(k), start=1):
            delta[f"theta{i}{tag}"] = _lin(t, [(eps[mu], f"A*{mu}{tag}") for mu in range(4)])
    return delta


def box_momenta(radius: int) -> list[tuple[int, int, int, int]]:
    return list(itertools.product(range(-radius, radius + 1), repeat=4))


def maxwell_block(k: Sequence[int], with_theta: bool = True) -> Complex:
    """The single-momentum block of the Maxwell complex."""
    k = tuple(k)
    t = GeneratorTable.build(_maxwell_specs(k, with_theta))
    return Complex(t, _maxwell_delta(t, k, with_theta))


def build_maxwell(radius: int, with_theta: bool = True) -> Complex:
    """All momenta of the box ``[-radius, radius]^4``, block-diagonal over ``k``.

    Metric signature is (+,-,-,-).  Thetas exist only for lightlike ``k != 0``.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    ks = box_momenta(radius)
    specs = [s for k in ks for s in _maxwell_specs(k, with_theta)]
    t = GeneratorTable.build(specs)
    delta = {}
    for k in ks:
        delta.update(_maxwell_delta(t, k, with_theta))
    return Complex(t, delta)


# -- massless scalar in two dimensions, Taylor modes -------------------------


def build_scalar2d(M: int, with_tower: bool = False, with_chi: bool = True) -> Complex:
    """Taylor coefficients ``phi(m,n)``, ``0 <= m, n <= M``, with ``delta phi*(m,n) = mn phi(m,n)``.

    With ``with_tower`` the second-order ``theta(m)``, ``thetabar(n)``
    and (unless ``with_chi`` is false) the third-order ``chi`` are included.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    idx = [(m, n) for m in range(M + 1) for n in range(M + 1)]
    specs = [(f"phi({m},{n})", 0, B) for m, n in idx] + [(f"phi*({m},{n})", 1, F) for m, n in idx]
    if with_tower:
        specs += [(f"theta({m})", 2, B) for m in range(M + 1)]
        specs += [(f"thetabar({n})", 2, B) for n in range(M + 1)]
        if with_chi:
            specs.append(("chi", 3, F))
    t = GeneratorTable.build(specs)
    delta = {f"phi*({m},{n})": _lin(t, [(m * n, f"phi({m},{n})")]) for m, n in idx}
    if with_tower:
        for m in range(M + 1):
            delta[f"theta({m})"] = _lin(t, [(1, f"phi*({m},0)")])
        for n in range(M + 1):
            delta[f"thetabar({n})"] = _lin(t, [(1, f"phi*(0,{n})")])
        if with_chi:
            delta["chi"] = _lin(t, [(1, "theta(0)"), (-1, "thetabar(0)")])
    return Complex(t, delta)


# -- random linear lattice systems --------------------------------------------


class Lcg:
    """64-bit linear congruential stream (see module docstring)."""

    A = 6364136223846793005
    C = 1442695040888963407
    MOD = 2 ** 64

    def __init__(self, seed: int):
        self.state = seed % self.MOD

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) % self.MOD
        return self.state >> 33

    def entry(self) -> int:
        return self.next() % 7 - 3


def random_rank_matrix(n: int, p: int, seed: int) -> tuple[Matrix, int]:
    """``n x n`` integer matrix of rank ``n - p``; returns it with the seed actually used."""
    if not 0 <= p <= n:
        raise ValueError(f"need 0 <= p <= n, got n={n}, p={p}")
    r = n - p
    while True:
        g = Lcg(seed)
        left = Matrix(n, r, [g.entry() for _ in range(n * r)])
        right = Matrix(r, n, [g.entry() for _ in range(r * n)])
        A = left @ right if r else Matrix.zeros(n, n)
        if rank(A) == r:
            return A, seed
        seed += 1


def build_random_linear(n: int, p: int, seed: int = 0) -> Complex:
    """Lattice fields ``u(i)`` with ``delta u*(j) = sum_i A[j][i] u(i)``, rank A = n - p."""
    A, _ = random_rank_matrix(n, p, seed)
    specs = [(f"u({i})", 0, B) for i in range(n)] + [(f"u*({j})", 1, F) for j in range(n)]
    t = GeneratorTable.build(specs)
    delta = {f"u*({j})": _lin(t, [(A[j, i], f"u({i})") for i in range(n)]) for j in range(n)}
    return Complex(t, delta)


# -- dispatch ------------------------------------------------------------------

KINDS = ("oscillator", "oscillator_ghost", "maxwell", "scalar2d", "random_linear")


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown model {self.kind!r}; expected one of {', '.join(KINDS)}")

    def build(self) -> Complex:
        p = dict(self.params)
        if self.kind == "oscillator":
            return build_oscillator(p.get("modes", (-2, 2)), p.get("omega", 1),
                                    with_ghosts=False, with_theta=p.get("with_theta", False))
        if self.kind == "oscillator_ghost":
            return build_oscillator(p.get("modes", (-2, 2)), p.get("omega", 1), with_ghosts=True)
        if self.kind == "maxwell":
            if "k" in p:
                return maxwell_block(p["k"], p.get("with_theta", True))
            return build_maxwell(p.get("radius", 1), p.get("with_theta", True))
        if self.kind == "scalar2d":
            return build_scalar2d(p.get("M", 4), p.get("with_tower", False), p.get("with_chi", True))
        return build_random_linear(p.get("n", 4), p.get("p", 0), p.get("seed", 0))
