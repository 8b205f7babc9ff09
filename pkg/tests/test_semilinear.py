import random
from fractions import Fraction

import pytest

from helpers import orbit_crystal, random_crystal, slope_context
from pelcrystal import (
    FCrystal,
    NewtonPolygon,
    SemilinearMap,
    compose,
    dual_polygon,
    linearize,
    newton_slopes,
    p_rank,
)
from pelcrystal import linalg, semilinear
from pelcrystal.errors import (
    DimensionMismatch,
    InsufficientPrecision,
    SlopeBoundExceeded,
    SlopeOutOfRange,
)
from pelcrystal.witt import make_context


def _map(ctx, rows, twist=1):
    return SemilinearMap(ctx, linalg.mat(rows), twist)


def test_charpoly_matches_direct_expansion():
    ctx = make_context(3, 2, 4)
    rng = random.Random(11)
    for h in (1, 2, 3, 4):
        for _ in range(8):
            a = linalg.random_matrix(ctx, h, rng)
            assert linalg.charpoly(a, ctx) == linalg.charpoly_direct(a, ctx)


def test_compose_identity_twists():
    ctx = make_context(3, 2, 3)
    ident = _map(ctx, linalg.identity(ctx, 2))
    c = compose(ident, ident)
    assert c.twist == 2
    assert linalg.mat_eq(c.matrix, linalg.identity(ctx, 2))


def test_compose_diagonal_generator():
    # over W_2(F_9): diag(X,1) twice gives diag(X sigma(X), 1) = diag(1, 1)
    ctx = make_context(3, 2, 2)
    x = ctx.generator()
    one, zero = ctx.one(), ctx.zero()
    f = _map(ctx, [[x, zero], [zero, one]])
    c = compose(f, f)
    assert c.twist == 2
    assert linalg.mat_eq(c.matrix, linalg.identity(ctx, 2))


def test_compose_scalars_randomized():
    ctx = make_context(5, 3, 3)
    rng = random.Random(12)
    for _ in range(20):
        a, b = ctx.random_elem(rng), ctx.random_elem(rng)
        f = _map(ctx, [[a]])
        g = _map(ctx, [[b]])
        assert compose(f, g).matrix[0][0] == a * b.frobenius()


def test_compose_associative_on_triples():
    ctx = make_context(3, 2, 3)
    rng = random.Random(13)
    for _ in range(10):
        maps = [
            SemilinearMap(ctx, linalg.random_matrix(ctx, 2, rng), rng.randrange(3))
            for _ in range(3)
        ]
        lhs = compose(compose(maps[0], maps[1]), maps[2])
        rhs = compose(maps[0], compose(maps[1], maps[2]))
        assert lhs.twist == rhs.twist and linalg.mat_eq(lhs.matrix, rhs.matrix)


def test_compose_dimension_mismatch():
    ctx = make_context(3, 1, 3)
    with pytest.raises(DimensionMismatch):
        compose(_map(ctx, linalg.identity(ctx, 2)), _map(ctx, linalg.identity(ctx, 3)))


def test_linearize_trivial_for_m1():
    ctx = make_context(5, 1, 4)
    rng = random.Random(14)
    a = linalg.random_matrix(ctx, 3, rng)
    c = FCrystal(ctx, SemilinearMap(ctx, a, 1))
    assert linalg.mat_eq(linearize(c), a)


def test_linearize_prime_subring_example():
    ctx = make_context(3, 2, 5)
    zero, one, p = ctx.zero(), ctx.one(), ctx.from_int(3)
    c = FCrystal(ctx, _map(ctx, [[zero, one], [p, zero]]))
    expected = linalg.mat([[p, zero], [zero, p]])
    assert linalg.mat_eq(linearize(c), expected)


def test_linearize_commutes_with_sigma_conjugation():
    # linearize(U A sigma(U)^{-1}) = U linearize(A) U^{-1}
    ctx = make_context(3, 2, 6)
    rng = random.Random(15)
    for _ in range(5):
        c = random_crystal(ctx, 3, rng)
        u = linalg.random_invertible(ctx, 3, rng)
        moved = semilinear.base_change(c, u)
        lhs = linearize(moved)
        rhs = linalg.mat_mul(linalg.mat_mul(u, linearize(c)), linalg.mat_inv(u, ctx))
        assert linalg.mat_eq(lhs, rhs)


def test_newton_slopes_split_ordinary():
    ctx = make_context(3, 1, 6)
    one, zero, p = ctx.one(), ctx.zero(), ctx.from_int(3)
    c = FCrystal(ctx, _map(ctx, [[one, zero], [zero, p]]))
    np_ = newton_slopes(c)
    assert np_.slopes == ((Fraction(0), 1), (Fraction(1), 1))


def test_newton_slopes_supersingular_companion():
    ctx = make_context(3, 1, 6)
    one, zero, p = ctx.one(), ctx.zero(), ctx.from_int(3)
    c = FCrystal(ctx, _map(ctx, [[zero, p], [one, zero]]))
    assert newton_slopes(c).slopes == ((Fraction(1, 2), 2),)


@pytest.mark.parametrize("f", [1, 2, 3])
@pytest.mark.parametrize("supersingular", [False, True])
def test_newton_slopes_orbit_assembled_dichotomy(f, supersingular):
    c = orbit_crystal(3, f, supersingular)
    np_ = newton_slopes(c)
    if supersingular:
        assert np_.slopes == ((Fraction(1, 2 * f), 4 * f),)
    else:
        assert np_.slopes == ((Fraction(0), 2 * f), (Fraction(1, f), 2 * f))


def test_newton_slopes_precision_guard():
    ctx = make_context(3, 1, 3)
    one, zero = ctx.one(), ctx.zero()
    c = FCrystal(ctx, _map(ctx, [[one, zero], [zero, one]]))
    with pytest.raises(InsufficientPrecision):
        newton_slopes(c)


def test_newton_slopes_bound_exceeded():
    ctx = make_context(3, 1, 8)
    c = FCrystal(ctx, _map(ctx, [[ctx.from_int(27)]]))
    with pytest.raises(SlopeBoundExceeded):
        newton_slopes(c)  # slope 3 > bound 1
    assert newton_slopes(c, Fraction(5)).slopes == ((Fraction(3), 1),)


def test_p_rank_examples():
    ctx = make_context(3, 1, 6)
    one, zero, p = ctx.one(), ctx.zero(), ctx.from_int(3)
    ordinary = FCrystal(ctx, _map(ctx, [[one, zero], [zero, p]]))
    ss = FCrystal(ctx, _map(ctx, [[zero, p], [one, zero]]))
    assert p_rank(ordinary) == 1
    assert p_rank(ss) == 0


def test_p_rank_unit_triangular_is_full():
    ctx = make_context(5, 2, 12)
    rng = random.Random(16)
    h = 4
    rows = [
        [
            ctx.random_unit(rng) if i == j else (ctx.random_elem(rng) if j > i else ctx.zero())
            for j in range(h)
        ]
        for i in range(h)
    ]
    c = FCrystal(ctx, _map(ctx, rows))
    assert p_rank(c) == h


def test_p_rank_equals_slope_zero_multiplicity_randomized():
    rng = random.Random(17)
    for p, m in ((3, 1), (3, 2), (5, 3)):
        ctx = slope_context(p, m, 4)
        for _ in range(8):
            h = rng.choice([1, 2, 3, 4])
            c = random_crystal(ctx, h, rng)
            np_ = newton_slopes(c)
            assert p_rank(c) == np_.multiplicity(0)


def test_polygon_invariants_and_dual():
    np_ = NewtonPolygon.from_pairs([(Fraction(0), 2)])
    assert dual_polygon(np_).slopes == ((Fraction(1), 2),)
    half = NewtonPolygon.from_pairs([(Fraction(1, 2), 2)])
    assert dual_polygon(half) == half
    assert dual_polygon(dual_polygon(np_)) == np_
    with pytest.raises(SlopeOutOfRange):
        dual_polygon(NewtonPolygon.from_pairs([(Fraction(3, 2), 1)]))


def test_polygon_basis_change_invariance():
    ctx = slope_context(3, 2, 3)
    rng = random.Random(18)
    for _ in range(5):
        c = random_crystal(ctx, 3, rng)
        np_ = newton_slopes(c)
        for _ in range(3):
            u = linalg.random_invertible(ctx, 3, rng)
            assert newton_slopes(semilinear.base_change(c, u)) == np_


def test_display_style_verschiebung_duality():
    # F V = V F = p and the V-iteration rank equals the slope-one multiplicity
    from helpers import random_params
    from pelcrystal import pel_display_template

    ctx = make_context(3, 4, 4 * 16 + 2)
    rng = random.Random(19)
    from pelcrystal.display import pel_display_template

    disp = pel_display_template(ctx, random_params(ctx, rng))
    c = disp.to_crystal()
    assert c.fv_is_p()
    np_ = newton_slopes(c)
    v_bar = linalg.mat_residue(c.verschiebung.matrix)
    # V acts with twist -1; its h-step iterated rank counts slope-1 of F
    rc = ctx.residue_context()
    prod = v_bar
    for k in range(1, c.rank):
        prod = linalg.mat_mul(prod, linalg.mat_sigma(v_bar, (-k) % ctx.m))
    assert linalg.rank_residue(prod, rc) == np_.multiplicity(1)
    # polarized (self-dual) crystals: the dual reading returns the p-rank
    if np_.is_self_dual():
        assert linalg.rank_residue(prod, rc) == p_rank(c)
