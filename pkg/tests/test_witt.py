import random

import pytest

from pelcrystal.errors import DegreeZero, NotAUnit, NotPrime
from pelcrystal.witt import make_context


def test_context_prime_field():
    ctx = make_context(3, 1, 2)
    assert ctx.modulus == (0, 1)
    assert ctx.q == 9


def test_context_quadratic_modulus_is_first_irreducible():
    ctx = make_context(3, 2, 2)
    # monic quadratics over F_3 in counter order: x^2, x^2+x, ... first
    # irreducible is x^2 + 1
    assert ctx.modulus == (1, 0, 1)


def test_context_rejects_composite_p():
    with pytest.raises(NotPrime):
        make_context(4, 1, 2)


def test_context_rejects_degree_zero():
    with pytest.raises(DegreeZero):
        make_context(3, 0, 2)
    with pytest.raises(DegreeZero):
        make_context(3, 1, 0)


def test_frobenius_identity_on_prime_field():
    ctx = make_context(5, 1, 3)
    rng = random.Random(1)
    for _ in range(20):
        x = ctx.random_elem(rng)
        assert x.frobenius() == x


def test_frobenius_on_quadratic_generator():
    ctx = make_context(3, 2, 2)
    x = ctx.generator()
    sx = x.frobenius()
    assert sx == -x  # the other root of x^2 + 1
    assert (sx * sx + ctx.one()).is_zero()
    # reduces to the cube mod p
    assert (sx - x * x * x).valuation() is None or (sx - x * x * x).valuation() >= 1


@pytest.mark.parametrize("p,m,n", [(3, 2, 2), (3, 2, 4), (5, 3, 3), (7, 2, 3), (2, 3, 4)])
def test_frobenius_is_ring_map_of_order_m(p, m, n):
    ctx = make_context(p, m, n)
    rng = random.Random(p * 100 + m)
    for _ in range(15):
        x, y = ctx.random_elem(rng), ctx.random_elem(rng)
        assert (x + y).frobenius() == x.frobenius() + y.frobenius()
        assert (x * y).frobenius() == x.frobenius() * y.frobenius()
        fx = x
        for _ in range(m):
            fx = fx.frobenius()
        assert fx == x
        # sigma(x) = x^p mod p
        assert (x.frobenius() - x**p).valuation() in (None,) or (
            (x.frobenius() - x**p).valuation() >= 1
        )


def test_ring_axioms_randomized():
    ctx = make_context(5, 2, 3)
    rng = random.Random(2)
    for _ in range(40):
        x, y, z = (ctx.random_elem(rng) for _ in range(3))
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


def test_teichmuller_basics():
    ctx = make_context(3, 1, 2)
    assert ctx.teichmuller(0).is_zero()
    assert ctx.teichmuller(1) == ctx.one()
    # fixed point of x -> x^3 on Z/9 over the residue 2
    assert ctx.teichmuller(2).coeffs == (8,)


def test_teichmuller_multiplicative_and_fixed():
    ctx = make_context(5, 2, 3)
    rng = random.Random(3)
    q = 5**2
    for _ in range(20):
        a = [rng.randrange(5) for _ in range(2)]
        b = [rng.randrange(5) for _ in range(2)]
        ta, tb = ctx.teichmuller(a), ctx.teichmuller(b)
        assert ta ** q == ta
        prod = ta * tb
        assert ctx.teichmuller(prod.residue().coeffs) == prod


def test_valuation():
    ctx = make_context(3, 1, 3)
    assert ctx.one().valuation() == 0
    assert ctx.from_int(3).valuation() == 1
    assert ctx.from_int(27).valuation() is None
    assert ctx.zero().valuation() is None


def test_valuation_additive_under_product():
    ctx = make_context(3, 2, 5)
    rng = random.Random(4)
    for _ in range(40):
        x, y = ctx.random_elem(rng), ctx.random_elem(rng)
        vx, vy = x.valuation(), y.valuation()
        if vx is None or vy is None or vx + vy >= ctx.n:
            continue
        assert (x * y).valuation() == vx + vy


def test_units_and_inverses():
    ctx = make_context(7, 2, 3)
    rng = random.Random(5)
    for _ in range(30):
        u = ctx.random_unit(rng)
        assert u * u.inverse() == ctx.one()
    with pytest.raises(NotAUnit):
        ctx.from_int(7).inverse()


def test_unit_iff_nonzero_mod_p():
    ctx = make_context(3, 2, 2)
    assert not ctx.from_int(3).is_unit()
    assert ctx.elem([3, 1]).is_unit()
