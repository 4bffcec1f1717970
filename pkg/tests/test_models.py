import pytest

from antifields.augmentation import find_identities, resolve
from antifields.exactlinalg import Matrix, left_kernel_basis, rank
from antifields.graded_algebra import Parity
from antifields.kt_complex import apply_delta, block_matrix, check_nilpotent, cohomology
from antifields.models import (
    Lcg,
    ModelSpec,
    box_momenta,
    build_maxwell,
    build_oscillator,
    build_random_linear,
    build_scalar2d,
    is_lightlike,
    lightlike_transverse,
    lower,
    maxwell_block,
    maxwell_operator,
    minkowski_square,
    random_rank_matrix,
    spatial_transverse,
)


def test_oscillator_shape():
    c = build_oscillator(range(-2, 3), 1)
    assert len(c.table) == 10
    assert block_matrix(c, 1, 1) == Matrix.diag([3, 0, -1, 0, 3])


def test_oscillator_ghosts():
    c = build_oscillator((-2, 2), 1, with_ghosts=True)
    assert len(c.table) == 14
    assert c.image_of("phi(1)") == c.table.gen("c(1)")
    assert c.image_of("phi(-1)") == c.table.gen("c(-1)")
    assert not c.image_of("phi(2)")
    assert check_nilpotent(c).ok


@pytest.mark.parametrize("omega", [3, 0])
def test_oscillator_bad_omega(omega):
    with pytest.raises(ValueError):
        build_oscillator(range(-2, 3), omega)


def test_lightlike_transverse_examples():
    assert lightlike_transverse((1, 0, 0, 1)) == ((0, 1, 0, 0), (0, 0, 1, 0))
    assert lightlike_transverse((1, 1, 0, 0)) == ((0, 0, 1, 0), (0, 0, 0, 1))
    with pytest.raises(ValueError):
        lightlike_transverse((0, 0, 0, 0))
    with pytest.raises(ValueError):
        lightlike_transverse((1, 0, 0, 0))


def test_transverse_vectors_for_every_lightlike_box_momentum():
    for k in box_momenta(2):
        if not is_lightlike(k):
            continue
        e1, e2 = lightlike_transverse(k)
        kl = lower(k)
        for e in (e1, e2):
            assert sum(a * b for a, b in zip(kl, e)) == 0
            assert e[0] == 0
        assert rank(Matrix.from_rows([k, e1, e2])) == 3


def _mu_row_annihilates(row, E):
    return not any(E.vecmul(row))


def test_maxwell_identities_and_ranks():
    for k in box_momenta(1):
        E = maxwell_operator(k)
        assert _mu_row_annihilates(k, E)  # gauge identity for every k
        k2 = minkowski_square(k)
        r = rank(E)
        if not any(k):
            assert r == 0
        elif k2 == 0:
            assert r == 1
        else:
            assert r == 3
        if any(k):
            eps = spatial_transverse(k)
            annihilate = all(_mu_row_annihilates(e, E) for e in eps)
            assert annihilate == (k2 == 0)


def test_maxwell_blocks_match_operator():
    k = (1, 0, 0, 1)
    c = maxwell_block(k)
    # columns = antifields, rows = fields: the transpose of the equation matrix
    assert block_matrix(c, 1, 1) == maxwell_operator(k).transpose()
    assert rank(block_matrix(c, 1, 1)) == 1
    assert rank(block_matrix(maxwell_block((1, 0, 0, 0)), 1, 1)) == 3
    # the only identity off the light cone is the gauge row k^mu, already killed by zeta
    (row,) = left_kernel_basis(maxwell_operator((1, 0, 0, 0)))
    assert row == (1, 0, 0, 0)
    assert not find_identities(maxwell_block((1, 0, 0, 0), with_theta=False), 1)
    assert len(find_identities(maxwell_block(k, with_theta=False), 1)) == 2


def test_maxwell_box():
    c = build_maxwell(1)
    n_light = sum(1 for k in box_momenta(1) if is_lightlike(k))
    assert n_light == 12
    assert len(c.table) == 81 * 10 + 2 * n_light
    assert check_nilpotent(c).ok
    for k in box_momenta(1):
        tag = "(" + ",".join(map(str, k)) + ")"
        assert apply_delta(c, c.image_of(f"zeta{tag}")) == 0


def test_scalar2d_counts_and_h0():
    c = build_scalar2d(4, with_tower=True)
    bosons = sum(1 for g in c.table if g.parity is Parity.BOSONIC)
    assert (len(c.table), bosons) == (25 + 25 + 10 + 1, 35)
    row, reps = cohomology(c, 0, 1, True)
    assert row.dim_H == 9 == 2 * 4 + 1
    names = {c.table.format(p) for p in reps}
    expected = {f"phi({m},0)" for m in range(5)} | {f"phi(0,{n})" for n in range(1, 5)}
    assert names == expected


def test_lcg_stream():
    g = Lcg(0)
    x = 1442695040888963407
    assert g.next() == x >> 33
    x = (6364136223846793005 * x + 1442695040888963407) % 2 ** 64
    assert g.next() == x >> 33
    assert all(-3 <= Lcg(s).entry() <= 3 for s in range(50))


def test_random_linear_deterministic_and_ranked():
    for s in range(20):
        n = 1 + s % 6
        p = s % (n + 1)
        A, used = random_rank_matrix(n, p, s)
        assert rank(A) == n - p
        assert used >= s
        assert random_rank_matrix(n, p, s) == (A, used)
        c = build_random_linear(n, p, s)
        assert c == build_random_linear(n, p, s)
        assert cohomology(c, 0, 1)[0].dim_H == p


def test_random_linear_edge_cases():
    _, rep = resolve(build_random_linear(4, 0, seed=1))
    assert rep.rounds == []
    c = build_random_linear(3, 3, seed=0)
    assert block_matrix(c, 1, 1).is_zero()
    _, rep = resolve(c)
    assert len(rep.added_at(2)) == 3
    with pytest.raises(ValueError):
        build_random_linear(2, 3)


def test_model_spec_dispatch():
    assert ModelSpec("oscillator", {"modes": (-4, 4), "omega": 2}).build() == build_oscillator((-4, 4), 2)
    assert ModelSpec("maxwell", {"k": (1, 0, 0, 1)}).build() == maxwell_block((1, 0, 0, 1))
    with pytest.raises(ValueError):
        ModelSpec("nope")
