import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antifields.exactlinalg import Matrix, in_span, kernel_basis, left_kernel_basis
from antifields.graded_algebra import GeneratorTable, Parity, Polynomial, enumerate_basis, multiply
from antifields.kt_complex import (
    Complex,
    GradingError,
    NilpotencyError,
    apply_delta,
    block_matrix,
    check_nilpotent,
    cohomology,
    cohomology_table,
    euler_check,
    grassmann_number,
    representative_vectors,
)
from antifields.models import build_oscillator, build_scalar2d, maxwell_block

B, F = Parity.BOSONIC, Parity.FERMIONIC


@pytest.fixture(scope="module")
def osc():
    return build_oscillator(range(-2, 3), 1)


@pytest.fixture(scope="module")
def osc_theta():
    return build_oscillator(range(-2, 3), 1, with_theta=True)


def random_complex(seed, dims=(1, 3, 4, 2)):
    """Linear complex with generators at antifield numbers -1, 0, 1, 2 and delta^2 = 0."""
    rng = random.Random(seed)
    dm, d0, d1, d2 = dims
    A = Matrix(d0, d1, [rng.randint(-2, 2) for _ in range(d0 * d1)])
    ker = kernel_basis(A)
    left = left_kernel_basis(A)

    def combos(basis, count, length):
        out = []
        for _ in range(count):
            v = [Fraction(0)] * length
            for b in basis:
                c = rng.randint(-2, 2)
                v = [x + c * y for x, y in zip(v, b)]
            out.append(v)
        return out

    up = combos(ker, d2, d1)
    down = combos(left, dm, d0)
    specs = [(f"c{i}", -1, F) for i in range(dm)] + [(f"u{i}", 0, B) for i in range(d0)]
    specs += [(f"v{i}", 1, F) for i in range(d1)] + [(f"w{i}", 2, B) for i in range(d2)]
    t = GeneratorTable.build(specs)

    def lin(coeffs, prefix):
        return Polynomial({((t.id_of(f"{prefix}{i}"), 1),): x for i, x in enumerate(coeffs) if x})

    delta = {}
    for j in range(d0):
        delta[f"u{j}"] = lin([down[i][j] for i in range(dm)], "c")
    for j in range(d1):
        delta[f"v{j}"] = lin([A[i, j] for i in range(d0)], "u")
    for j in range(d2):
        delta[f"w{j}"] = lin(up[j], "v")
    return Complex(t, delta)


# -- apply_delta ---------------------------------------------------------------


def test_delta_of_antifield(osc):
    t = osc.table
    assert apply_delta(osc, t.gen("phi*(2)")) == 3 * t.gen("phi(2)")


def test_delta_of_on_shell_pair(osc):
    t = osc.table
    assert apply_delta(osc, t.monomial("phi*(1)", "phi*(-1)")) == 0


def test_leibniz_sign_on_pair(osc):
    t = osc.table
    got = apply_delta(osc, t.monomial("phi*(2)", "phi*(-2)"))
    expected = 3 * t.monomial("phi(2)", "phi*(-2)") - 3 * t.monomial("phi*(2)", "phi(-2)")
    assert got == expected


# -- nilpotency ------------------------------------------------------------------


def test_nilpotent_models(osc):
    assert check_nilpotent(osc).ok
    for k in [(1, 0, 0, 1), (1, 0, 0, 0), (0, 0, 0, 0), (1, 1, 1, 0)]:
        assert check_nilpotent(maxwell_block(k)).ok


def test_self_map_violates_grading():
    t = GeneratorTable.build([("phi", 0, B), ("phi*", 1, F)])
    with pytest.raises(GradingError, match="phi\\*"):
        Complex(t, {"phi*": t.gen("phi*")})


def test_corrupted_rule_reports_counterexample():
    t = GeneratorTable.build([("c", -1, F), ("phi", 0, B), ("phi*", 1, F)])
    bad = Complex(t, {"phi": t.gen("c"), "phi*": t.gen("phi")})
    report = check_nilpotent(bad)
    assert not report.ok
    assert report.generator == "phi*"
    assert report.image == t.gen("c")
    with pytest.raises(NilpotencyError):
        cohomology(bad, 0, 1)


# -- block matrices ----------------------------------------------------------------


def test_block_matrices(osc, osc_theta):
    assert block_matrix(osc, 1, 1) == Matrix.diag([3, 0, -1, 0, 3])
    assert block_matrix(osc, 0, 1).is_zero()
    m = block_matrix(osc_theta, 2, 1)
    assert m.shape == (5, 2)
    assert m.column(0) == (0, 1, 0, 0, 0)
    assert m.column(1) == (0, 0, 0, 1, 0)


# -- cohomology ------------------------------------------------------------------------


def test_oscillator_h1(osc):
    row, reps = cohomology(osc, 1, 1, True)
    assert row.dim_H == 2
    t = osc.table
    assert reps == [t.gen("phi*(-1)"), t.gen("phi*(1)")]


def test_oscillator_h2(osc):
    row, reps = cohomology(osc, 2, 2, True)
    assert row.dim_H == 1
    (rep,) = reps
    target = osc.table.monomial("phi*(1)", "phi*(-1)")
    assert rep == target or rep == -target


def test_oscillator_h0_weight2(osc):
    # oracle: monomials of degree 2 in the two on-shell modes
    on_shell_monomials = [(a, 2 - a) for a in range(3)]
    assert cohomology(osc, 0, 2)[0].dim_H == len(on_shell_monomials) == 3


def test_augmented_oscillator_kills_h1(osc_theta):
    assert cohomology(osc_theta, 1, 1)[0].dim_H == 0


def test_table_pattern(osc, osc_theta):
    tab = cohomology_table(osc, 2, 2)
    assert tab.nonzero() == {(0, 0): 1, (0, 1): 2, (0, 2): 3, (1, 1): 2, (1, 2): 4, (2, 2): 1}
    tab = cohomology_table(osc_theta, 4, 4)
    assert all(r.dim_H == 0 for r in tab.rows if r.n >= 1)


def test_empty_complex():
    c = Complex(GeneratorTable())
    tab = cohomology_table(c, 2, 2)
    assert [(r.n, r.d, r.dim_H) for r in tab.rows] == [(0, 0, 1)]


def test_table_rows_ordered_and_consistent(osc):
    tab = cohomology_table(osc, 3, 3, want_representatives=True)
    keys = [(r.n, r.d) for r in tab.rows]
    assert keys == sorted(keys)
    for r in tab.rows:
        assert r.dim_H == r.dim_kernel - r.dim_image >= 0
        assert len(tab.representatives[(r.n, r.d)]) == r.dim_H
    assert "phi*(-1)" in tab.to_text()


def test_off_shell_modes_absent_from_representatives(osc):
    tab = cohomology_table(osc, 2, 3, want_representatives=True)
    off_shell = {osc.table.id_of(f"{p}({k})") for p in ("phi", "phi*") for k in (-2, 0, 2)}
    for reps in tab.representatives.values():
        for p in reps:
            for m, _ in p:
                assert not {g for g, _ in m} & off_shell


# -- Euler characteristic and Grassmann number -------------------------------------------


def test_euler_examples(osc, osc_theta):
    e = euler_check(osc, 1)
    assert (e.chain_euler, e.cohomology_euler) == (0, 0)
    e = euler_check(osc_theta, 1)
    assert (e.chain_euler, e.cohomology_euler) == (2, 2)
    for c in (osc, osc_theta, Complex(GeneratorTable())):
        e = euler_check(c, 0)
        assert e.equal and e.chain_euler == 1


def test_euler_window_too_small(osc):
    with pytest.raises(ValueError, match="too small"):
        euler_check(osc, 2, window=(0, 1))


def test_grassmann_numbers(osc, osc_theta):
    assert grassmann_number(osc) == 0
    assert grassmann_number(osc_theta) == 2
    assert grassmann_number(build_scalar2d(4, with_tower=True)) == (25 + 10) - (25 + 1) == 9


# -- structural properties on random complexes ----------------------------------------


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_image_in_kernel_and_rank_nullity(seed):
    c = random_complex(seed)
    assert check_nilpotent(c).ok
    for d in range(3):
        for n in range(-d, 2 * d + 1):
            out = block_matrix(c, n, d)
            inc = block_matrix(c, n + 1, d)
            ker = kernel_basis(out)
            for j in range(inc.cols):
                assert in_span(ker, inc.column(j))
            row, _ = cohomology(c, n, d)
            assert row.dim_chain == row.rank_out + row.dim_kernel
            assert row.dim_chain == len(enumerate_basis(c.table, n, d))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_euler_identity_random(seed):
    c = random_complex(seed)
    for d in range(4):
        assert euler_check(c, d).equal


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_leibniz_on_products(seed, data):
    c = random_complex(seed)
    t = c.table
    n = len(t)
    words = [data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=3)) for _ in range(2)]
    polys = []
    for w in words:
        p = Polynomial.constant()
        for g in w:
            p = multiply(t, p, Polynomial({((g, 1),): 1}))
        polys.append(p)
    a, b = polys
    if not a or not b:
        return
    sign = -1 if t.parity(next(iter(a.terms))) else 1
    lhs = apply_delta(c, multiply(t, a, b))
    rhs = multiply(t, apply_delta(c, a), b) + sign * multiply(t, a, apply_delta(c, b))
    assert lhs == rhs


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.randoms(use_true_random=False))
def test_relabeling_invariance(seed, rnd):
    c = random_complex(seed)
    order = list(range(len(c.table)))
    rnd.shuffle(order)
    p = c.permuted(order)
    assert check_nilpotent(p).ok
    assert cohomology_table(c, 4, 3).nonzero() == cohomology_table(p, 4, 3).nonzero()


def test_relabeled_oscillator_keeps_dimensions(osc):
    order = list(reversed(range(len(osc.table))))
    assert cohomology_table(osc.permuted(order), 3, 3).nonzero() == cohomology_table(osc, 3, 3).nonzero()


def test_representative_vectors_are_cocycles(osc):
    out = block_matrix(osc, 2, 3)
    for v in representative_vectors(osc, 2, 3):
        assert not any(out @ v)
