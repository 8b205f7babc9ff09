"""Shared builders for randomized tests: crystals with bounded slopes,
orbit-assembled cyclic crystals, random display parameters."""

from __future__ import annotations

import random

from pelcrystal import FCrystal, SemilinearMap
from pelcrystal import linalg
from pelcrystal.display import PARAM_NAMES
from pelcrystal.witt import WittContext, make_context


def random_crystal(ctx: WittContext, h: int, rng: random.Random) -> FCrystal:
    """U . diag(p^{e_i}) . U' with e_i in {0, 1}: slopes stay in [0, 1]."""
    u = linalg.random_invertible(ctx, h, rng)
    u2 = linalg.random_invertible(ctx, h, rng)
    p = ctx.from_int(ctx.p)
    one = ctx.one()
    diag = tuple(
        tuple((p if rng.random() < 0.5 else one) if i == j else ctx.zero() for j in range(h))
        for i in range(h)
    )
    a = linalg.mat_mul(linalg.mat_mul(u, diag), u2)
    return FCrystal(ctx, SemilinearMap(ctx, a, 1))


def slope_context(p: int, m: int, h: int) -> WittContext:
    """Precision sufficient for slopes in [0, 1] at rank h."""
    return make_context(p, m, m * h + 2)


def orbit_crystal(p: int, f: int, supersingular: bool) -> FCrystal:
    """Cyclic 4f x 4f crystal: rank-2 blocks around a 2f-cycle.

    Positions 0 and f carry the distinguished transition (colength-one image),
    modelled as diag(1, p) in the ordinary case and the twist [[0, p], [1, 0]]
    in the supersingular one; every other transition is the identity.
    """
    h = 4 * f
    ctx = make_context(p, 1, h + 2)
    zero, one, pe = ctx.zero(), ctx.one(), ctx.from_int(p)
    rows = [[zero] * h for _ in range(h)]
    for k in range(2 * f):
        tgt = (k + 1) % (2 * f)
        if k % f == 0:
            block = [[one, zero], [zero, pe]] if not supersingular else [[zero, pe], [one, zero]]
        else:
            block = [[one, zero], [zero, one]]
        for i in range(2):
            for j in range(2):
                rows[2 * tgt + i][2 * k + j] = block[i][j]
    return FCrystal(ctx, SemilinearMap(ctx, linalg.mat(rows), 1))


def random_params(ctx: WittContext, rng: random.Random, units: bool = True) -> dict:
    pick = ctx.random_unit if units else ctx.random_elem
    return {name: pick(rng) for name in PARAM_NAMES}
