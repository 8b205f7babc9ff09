"""Sigma-semilinear operators on free W_n-modules and their Newton slopes.

A semilinear map acts as v -> M . sigma^s(v).  Composition twists the right
factor: (M, s) o (N, t) = (M . sigma^s(N), s + t).  Iterating the Frobenius of
an F-crystal m times (m the residue degree) produces a genuinely linear matrix
because sigma^m = id, and the Newton polygon is read off the valuations of its
characteristic polynomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    DimensionMismatch,
    InsufficientPrecision,
    SlopeBoundExceeded,
    SlopeOutOfRange,
)
from .linalg import Matrix
from .witt import WittContext


@dataclass(frozen=True)
class SemilinearMap:
    """Matrix plus sigma-twist: v -> matrix . sigma^twist(v)."""

    ctx: WittContext
    matrix: Matrix
    twist: int = 1

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> Tuple:
        sv = [x.frobenius(self.twist % self.ctx.m) for x in v]
        return tuple(
            linalg._dot(row, sv) for row in self.matrix
        )


def compose(f: SemilinearMap, g: SemilinearMap) -> SemilinearMap:
    """(M, s) o (N, t) = (M . sigma^s(N), s + t)."""
    if f.ctx != g.ctx:
        raise DimensionMismatch("maps live over different contexts")
    if len(f.matrix[0]) != len(g.matrix):
        raise DimensionMismatch("inner dimensions disagree")
    twisted = linalg.mat_sigma(g.matrix, f.twist % f.ctx.m)
    return SemilinearMap(f.ctx, linalg.mat_mul(f.matrix, twisted), f.twist + g.twist)


@dataclass(frozen=True)
class FCrystal:
    """Free W_n-module with sigma-semilinear Frobenius, optional Verschiebung."""

    ctx: WittContext
    frobenius: SemilinearMap
    verschiebung: Optional[SemilinearMap] = None

    def __post_init__(self):
        if self.frobenius.twist != 1:
            raise DimensionMismatch("frobenius must carry twist 1")
        if self.verschiebung is not None and self.verschiebung.twist != -1:
            raise DimensionMismatch("verschiebung must carry twist -1")

    @property
    def rank(self) -> int:
        return self.frobenius.dim

    def fv_is_p(self) -> bool:
        """Check F o V = V o F = p . id exactly to precision."""
        if self.verschiebung is None:
            return False
        ctx = self.ctx
        p_id = linalg.mat_scal(ctx.from_int(ctx.p), linalg.identity(ctx, self.rank))
        fv = compose(self.frobenius, self.verschiebung)
        vf = compose(self.verschiebung, self.frobenius)
        return linalg.mat_eq(fv.matrix, p_id) and linalg.mat_eq(vf.matrix, p_id)


@dataclass(frozen=True)
class NewtonPolygon:
    """Multiset of rational slopes, sorted ascending, zero multiplicities dropped."""

    slopes: Tuple[Tuple[Fraction, int], ...]

    @staticmethod
    def from_pairs(pairs) -> "NewtonPolygon":
        acc = {}
        for s, mult in pairs:
            s = Fraction(s)
            if mult:
                acc[s] = acc.get(s, 0) + mult
        return NewtonPolygon(tuple(sorted((s, m) for s, m in acc.items() if m)))

    def height(self) -> int:
        return sum(m for _, m in self.slopes)

    def rise(self) -> Fraction:
        return sum((s * m for s, m in self.slopes), Fraction(0))

    def expand(self) -> List[Fraction]:
        out: List[Fraction] = []
        for s, m in self.slopes:
            out.extend([s] * m)
        return out

    def multiplicity(self, s) -> int:
        s = Fraction(s)
        for t, m in self.slopes:
            if t == s:
                return m
        return 0

    def dual(self) -> "NewtonPolygon":
        for s, _ in self.slopes:
            if s < 0 or s > 1:
                raise SlopeOutOfRange(f"slope {s} outside [0, 1]")
        return NewtonPolygon.from_pairs((1 - s, m) for s, m in self.slopes)

    def is_self_dual(self) -> bool:
        return self == self.dual()

    def dominates(self, other: "NewtonPolygon") -> bool:
        """Specialization order: self lies on or above other, same endpoints."""
        if self.height() != other.height() or self.rise() != other.rise():
            return False
        a, b = self.expand(), other.expand()
        ya = yb = Fraction(0)
        for sa, sb in zip(a, b):
            ya += sa
            yb += sb
            if ya < yb:
                return False
        return True

    def to_json(self) -> List[List[int]]:
        return [[s.numerator, s.denominator, m] for s, m in self.slopes]


def linearize(c: FCrystal) -> Matrix:
    """Matrix of F^m in the standard basis; linear since sigma^m = id."""
    m = c.ctx.m
    out = c.frobenius.matrix
    for k in range(1, m):
        out = linalg.mat_mul(out, linalg.mat_sigma(c.frobenius.matrix, k))
    return out


def newton_slopes(c: FCrystal, slope_bound: Fraction = Fraction(1)) -> NewtonPolygon:
    """Newton polygon of the crystal from the linearized characteristic polynomial.

    Requires n >= m * h * slope_bound + 2: coefficient valuations on the hull
    are bounded by m*h*slope_bound when slopes stay within bound, and the +2
    guards hull ambiguity at the working precision.
    """
    slope_bound = Fraction(slope_bound)
    ctx = c.ctx
    h = c.rank
    need = ceil(ctx.m * h * slope_bound) + 2
    if ctx.n < need:
        raise InsufficientPrecision(
            f"precision n = {ctx.n} below required {need} for rank {h}, m = {ctx.m}, "
            f"slope bound {slope_bound}"
        )
    cp = linalg.charpoly(linearize(c), ctx)
    # cp = [1, b_1, ..., b_h]; coefficient of lambda^i is cp[h - i]
    pts: List[Tuple[int, int]] = []
    unknown: List[int] = []
    for i in range(h + 1):
        v = cp[h - i].valuation()
        if v is None:
            unknown.append(i)
        else:
            pts.append((i, v))
    if 0 in unknown:
        raise SlopeBoundExceeded(
            "constant coefficient vanishes to working precision; "
            "some slope exceeds the requested bound"
        )
    hull = _lower_hull(pts)
    # unknown coefficients must lie on or above the hull at height >= n
    for i in unknown:
        if Fraction(ctx.n) < _hull_height(hull, i):
            raise InsufficientPrecision(
                f"coefficient of degree {i} is zero to precision but below the hull"
            )
    pairs = []
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        slope = Fraction(v1 - v2, i2 - i1) / ctx.m
        if slope < 0:
            raise SlopeOutOfRange(f"negative slope {slope}: matrix is not integral")
        if slope > slope_bound:
            raise SlopeBoundExceeded(f"slope {slope} exceeds bound {slope_bound}")
        pairs.append((slope, i2 - i1))
    return NewtonPolygon.from_pairs(pairs)


def _lower_hull(pts: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    pts = sorted(pts)
    hull: List[Tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) <= (pt[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _hull_height(hull: List[Tuple[int, int]], x: int) -> Fraction:
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 <= x <= x2:
            return Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (x - x1)
    return Fraction(hull[-1][1])


def p_rank(c: FCrystal) -> int:
    """Stabilized rank of the mod-p iterated Frobenius; p-rank of the crystal.

    Iterates exactly h = rank times; image ranks stabilize within h steps.
    """
    ctx = c.ctx
    h = c.rank
    abar = linalg.mat_residue(c.frobenius.matrix)
    rc = ctx.residue_context()
    prod = abar
    for k in range(1, h):
        prod = linalg.mat_mul(prod, linalg.mat_sigma(abar, k % ctx.m))
    return linalg.rank_residue(prod, rc)


def iterated_rank(mat_mod_p: Matrix, ctx: WittContext, steps: int) -> int:
    """Rank of M . sigma(M) ... sigma^{steps-1}(M) over the residue field."""
    rc = ctx.residue_context()
    prod = mat_mod_p
    for k in range(1, steps):
        prod = linalg.mat_mul(prod, linalg.mat_sigma(mat_mod_p, k % rc.m))
    return linalg.rank_residue(prod, rc)


def dual_polygon(np: NewtonPolygon) -> NewtonPolygon:
    return np.dual()


def base_change(c: FCrystal, u: Matrix) -> FCrystal:
    """Replace the Frobenius matrix A by U . A . sigma(U)^{-1}."""
    ctx = c.ctx
    su_inv = linalg.mat_inv(linalg.mat_sigma(u, 1), ctx)
    new_f = linalg.mat_mul(linalg.mat_mul(u, c.frobenius.matrix), su_inv)
    new_v = None
    if c.verschiebung is not None:
        # V acts with sigma^{-1}; it transforms by U . V . sigma^{-1}(U)^{-1}
        sinv_u_inv = linalg.mat_inv(linalg.mat_sigma(u, (ctx.m - 1) % ctx.m), ctx)
        new_v = SemilinearMap(
            ctx, linalg.mat_mul(linalg.mat_mul(u, c.verschiebung.matrix), sinv_u_inv), -1
        )
    return FCrystal(ctx, SemilinearMap(ctx, new_f, 1), new_v)
