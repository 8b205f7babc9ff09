"""Display-theoretic deformation engine and degeneracy-locus equations.

A display is a block matrix (A B; C D) over W_n with Frobenius (A pB; C pD).
The one-parameter deformation replaces the blocks by (A+TC, p(B+TD); C, pD),
where T is the Teichmueller lift of the parameter (so sigma(T) = T^p), and the
Hasse-Witt matrix of the deformation is A+TC read mod p.  Iterating the
sigma-twisted product of that block produces the local equations of the
Newton-jumping locus, whose order of vanishing at t = 0 is the multiplicity
computation.

The worked 8x8 case (total degree 2, local degree 2) is generated by
``pel_display_template`` and doubles as the golden fixture pinning all basis
conventions.  The basis of the unit block is

    X1, X2, Y2, X1*, X2*, Y2*, Yb1, Yb1*

and of the V-block

    Y1, Xb2, Yb2, Y1*, Xb2*, Yb2*, Xb1, Xb1*

(b marks conjugated labels, * the star involution).  The printed A and C
patterns pin only those two blocks; B and D are completed by unit slots
sending X to X and Y to Y along the Frobenius chain, the minimal choice
keeping every nonzero entry on a character edge chi -> sigma(chi).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    DimensionMismatch,
    IdenticallyZeroToTruncation,
    NonUnitWhereUnitRequired,
    SummandNotRankOne,
)
from .linalg import Matrix
from .semilinear import FCrystal, SemilinearMap
from .symbolic import SymPoly
from .witt import WittContext, WittElem


class TPoly:
    """Truncated polynomial in the deformation parameter over a sigma-ring.

    Coefficients may be WittElem or SymPoly (anything with ring dunders,
    is_zero() and frobenius()).  sigma multiplies exponents by p and applies
    frobenius to coefficients; products drop terms of degree >= N.
    """

    __slots__ = ("p", "N", "coeffs")

    def __init__(self, p: int, N: int, coeffs: Mapping[int, object]):
        self.p = p
        self.N = N
        self.coeffs = {e: c for e, c in coeffs.items() if e < N and not c.is_zero()}

    @staticmethod
    def const(p: int, N: int, c) -> "TPoly":
        return TPoly(p, N, {0: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TPoly)
            and (self.p, self.N) == (other.p, other.N)
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.N, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __add__(self, other: "TPoly") -> "TPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return TPoly(self.p, self.N, out)

    def __neg__(self) -> "TPoly":
        return TPoly(self.p, self.N, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __mul__(self, other: "TPoly") -> "TPoly":
        out: Dict[int, object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= self.N:
                    continue
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return TPoly(self.p, self.N, out)

    def sigma(self, k: int = 1) -> "TPoly":
        out: Dict[int, object] = {}
        for e, c in self.coeffs.items():
            ek = e * self.p**k
            if ek < self.N:
                out[ek] = c.frobenius(k)
        return TPoly(self.p, self.N, out)

    def at_zero(self):
        return self.coeffs.get(0)

    def vanishing_order(self) -> Optional[int]:
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"({c!r})" + ("" if e == 0 else f"*t^{e}")
            for e, c in sorted(self.coeffs.items())
        )


TPMatrix = Tuple[Tuple[TPoly, ...], ...]


def tp_mat_mul(a: TPMatrix, b: TPMatrix) -> TPMatrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions disagree")
    bt = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            orow.append(acc)
        out.append(tuple(orow))
    return tuple(out)


def tp_mat_sigma(a: TPMatrix, k: int = 1) -> TPMatrix:
    return tuple(tuple(x.sigma(k) for x in row) for row in a)


def tp_mat_eq(a: TPMatrix, b: TPMatrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def twisted_product(x: TPMatrix, s: int) -> TPMatrix:
    """X . sigma(X) . ... . sigma^{s-1}(X)."""
    out = x
    for k in range(1, s):
        out = tp_mat_mul(out, tp_mat_sigma(x, k))
    return out


# -- displays ----------------------------------------------------------------


@dataclass(frozen=True)
class Display:
    """Block presentation (A B; C D) over W_n; Frobenius is (A pB; C pD)."""

    ctx: WittContext
    blocks: Tuple[Matrix, Matrix, Matrix, Matrix]  # A, B, C, D
    line_ranks: Optional[Tuple[int, ...]] = None
    slot_chars: Optional[Tuple[Tuple[str, int], ...]] = None
    chain_length: Optional[int] = None

    @property
    def h0(self) -> int:
        return len(self.blocks[0])

    @property
    def h1(self) -> int:
        return len(self.blocks[3])

    def full_matrix(self) -> Matrix:
        a, b, c, d = self.blocks
        top = tuple(ra + rb for ra, rb in zip(a, b))
        bot = tuple(rc + rd for rc, rd in zip(c, d))
        return top + bot

    def frobenius_matrix(self) -> Matrix:
        a, b, c, d = self.blocks
        p = self.ctx.from_int(self.ctx.p)
        top = tuple(ra + tuple(p * x for x in rb) for ra, rb in zip(a, b))
        bot = tuple(rc + tuple(p * x for x in rd) for rc, rd in zip(c, d))
        return top + bot

    def is_invertible(self) -> bool:
        return linalg.is_invertible(self.full_matrix(), self.ctx)

    def require_invertible(self) -> "Display":
        if not self.is_invertible():
            raise NonUnitWhereUnitRequired(
                "display block matrix (A B; C D) is not invertible over W_n"
            )
        return self

    def to_crystal(self) -> FCrystal:
        """The F-crystal (D, F, V) presented by the display.

        V = p F^{-1} is integral: with M the full block matrix,
        V = sigma^{-1}(diag(pI, I) . M^{-1}), acting with twist -1.
        """
        self.require_invertible()
        ctx = self.ctx
        h = self.h0 + self.h1
        f_mat = self.frobenius_matrix()
        m_inv = linalg.mat_inv(self.full_matrix(), ctx)
        p = ctx.from_int(ctx.p)
        scaled = tuple(
            tuple(p * x for x in row) if r < self.h0 else row
            for r, row in enumerate(m_inv)
        )
        v_mat = linalg.mat_sigma(scaled, (ctx.m - 1) % ctx.m)
        return FCrystal(
            ctx,
            SemilinearMap(ctx, f_mat, 1),
            SemilinearMap(ctx, v_mat, -1),
        )


@dataclass(frozen=True)
class DeformedDisplay:
    """Blocks (A+TC, p(B+TD); C, pD) over truncated T-polynomials."""

    base: Display
    N: int

    @property
    def ctx(self) -> WittContext:
        return self.base.ctx

    def unit_block(self) -> TPMatrix:
        """A + TC over W_n."""
        a, _, c, _ = self.base.blocks
        p, N = self.ctx.p, self.N
        return tuple(
            tuple(TPoly(p, N, {0: a[i][j], 1: c[i][j]}) for j in range(len(a[0])))
            for i in range(len(a))
        )

    def hasse_witt_block(self) -> TPMatrix:
        """A + TC read mod p, over the residue field."""
        a, _, c, _ = self.base.blocks
        p, N = self.ctx.p, self.N
        return tuple(
            tuple(
                TPoly(p, N, {0: a[i][j].residue(), 1: c[i][j].residue()})
                for j in range(len(a[0]))
            )
            for i in range(len(a))
        )

    def block_frobenius(self) -> TPMatrix:
        """Full deformed Frobenius (A+TC, p(B+TD); C, pD) over W_n."""
        a, b, c, d = self.base.blocks
        ctx, p, N = self.ctx, self.ctx.p, self.N
        pe = ctx.from_int(p)
        h0, h1 = self.base.h0, self.base.h1
        top = tuple(
            tuple(TPoly(p, N, {0: a[i][j], 1: c[i][j]}) for j in range(h0))
            + tuple(TPoly(p, N, {0: pe * b[i][j], 1: pe * d[i][j]}) for j in range(h1))
            for i in range(h0)
        )
        bot = tuple(
            tuple(TPoly(p, N, {0: c[i][j]}) for j in range(h0))
            + tuple(TPoly(p, N, {0: pe * d[i][j]}) for j in range(h1))
            for i in range(h1)
        )
        return top + bot


def deform(disp: Display, N: Optional[int] = None) -> DeformedDisplay:
    """Universal one-parameter deformation, truncated at T-degree N.

    Default N = p^2 + 1 keeps every term of a two-step twisted product.
    """
    if N is None:
        N = disp.ctx.p**2 + 1
    if N < 2:
        raise DimensionMismatch("truncation order must be >= 2")
    return DeformedDisplay(disp, N)


def hasse_witt_iterate(dd: DeformedDisplay, s: int) -> TPMatrix:
    """(A+TC) . sigma(A+TC) . ... . sigma^{s-1}(A+TC), mod p."""
    if s < 1:
        raise DimensionMismatch("iteration count must be >= 1")
    return twisted_product(dd.hasse_witt_block(), s)


def endo_compat(m1: TPMatrix, m2: TPMatrix) -> bool:
    """Check M1 . sigma(M2) = M2 . M1 entry-exactly."""
    if len(m1) != len(m2) or len(m1[0]) != len(m2[0]):
        raise DimensionMismatch("matrices must have identical shape")
    return tp_mat_eq(tp_mat_mul(m1, tp_mat_sigma(m2, 1)), tp_mat_mul(m2, m1))


def degeneracy_equation(dd: DeformedDisplay, source: int, target: int, s: int) -> TPoly:
    """Entry of the iterated Hasse-Witt matrix joining two rank-one lines."""
    ranks = dd.base.line_ranks
    if ranks is not None:
        for idx in (source, target):
            if not (0 <= idx < len(ranks)) or ranks[idx] != 1:
                raise SummandNotRankOne(f"line {idx} is not a rank-one summand line")
    if dd.base.chain_length is not None and s != dd.base.chain_length:
        raise DimensionMismatch(
            f"degeneracy equation needs s = {dd.base.chain_length} iterations, got {s}"
        )
    return hasse_witt_iterate(dd, s)[target][source]


def multiplicity_at_zero(eq: TPoly) -> int:
    """Order of vanishing of the local equation at t = 0."""
    order = eq.vanishing_order()
    if order is None:
        raise IdenticallyZeroToTruncation(
            "equation vanishes identically to the working truncation"
        )
    return order


# -- the worked 8x8 template --------------------------------------------------

PARAM_NAMES = (
    "a1", "b1", "c1", "d1", "a2", "b2", "e1", "f1",
    "a1s", "b1s", "c1s", "d1s", "a2s", "b2s", "e1s", "f1s",
)

# (row, col) -> parameter name, 0-indexed, matching the printed 8x8 blocks
A_PATTERN = {
    (0, 4): "a1", (0, 5): "c1",
    (1, 0): "a2",
    (2, 0): "b2",
    (3, 1): "a1s", (3, 2): "c1s",
    (4, 3): "a2s",
    (5, 3): "b2s",
}
C_PATTERN = {
    (0, 4): "b1", (0, 5): "d1",
    (1, 6): "e1",
    (2, 6): "f1",
    (3, 1): "b1s", (3, 2): "d1s",
    (4, 7): "e1s",
    (5, 7): "f1s",
}
# unit completions of the unprinted B and D blocks (X -> X, Y -> Y chain slots)
B_UNITS = ((2, 0), (5, 3), (7, 2), (6, 5))
D_UNITS = ((1, 6), (4, 7), (7, 1), (6, 4))

# character chain slot of each basis line: (chain id, sigma-power mod 2d).
# The deformation entries couple conjugated slots to the plain chain, so the
# commutation identity M1 sigma(M2) = M2 M1 admits exactly one consistent
# assignment: a single sigma-chain of length 2d with the powers below (solved
# from the printed sparsity; the polarization identifies the conjugate
# characters with the plain ones on the diagonal).
TEMPLATE_SLOT_CHARS = (
    # unit block: X1, X2, Y2, X1*, X2*, Y2*, Yb1, Yb1*
    ("orbit", 0), ("orbit", 1), ("orbit", 1), ("orbit", 2),
    ("orbit", 3), ("orbit", 3), ("orbit", 0), ("orbit", 2),
    # V-block: Y1, Xb2, Yb2, Y1*, Xb2*, Yb2*, Xb1, Xb1*
    ("orbit", 0), ("orbit", 1), ("orbit", 1), ("orbit", 2),
    ("orbit", 3), ("orbit", 3), ("orbit", 0), ("orbit", 2),
)
TEMPLATE_LINE_RANKS = (1, 2, 2, 1, 2, 2, 1, 1)


def _pattern_matrix(pattern: Mapping[Tuple[int, int], str], params: Mapping[str, object], zero):
    return tuple(
        tuple(params[pattern[(i, j)]] if (i, j) in pattern else zero for j in range(8))
        for i in range(8)
    )


def pel_display_template(
    ctx: WittContext, params: Mapping[str, WittElem], check: bool = True
) -> Display:
    """The 8x8 display of the worked case (total degree 2, local degree 2).

    ``params`` maps the sixteen free names (a1 ... f1 and starred mates) to
    Witt elements.  With check=True the full block matrix must be invertible;
    pass check=False to inspect the sparsity pattern alone.
    """
    missing = [k for k in PARAM_NAMES if k not in params]
    if missing:
        raise DimensionMismatch(f"missing template parameters: {missing}")
    zero, one = ctx.zero(), ctx.one()
    a = _pattern_matrix(A_PATTERN, params, zero)
    c = _pattern_matrix(C_PATTERN, params, zero)
    b = tuple(
        tuple(one if (i, j) in B_UNITS else zero for j in range(8)) for i in range(8)
    )
    d = tuple(
        tuple(one if (i, j) in D_UNITS else zero for j in range(8)) for i in range(8)
    )
    disp = Display(
        ctx,
        (a, b, c, d),
        line_ranks=TEMPLATE_LINE_RANKS,
        slot_chars=TEMPLATE_SLOT_CHARS,
        chain_length=2,
    )
    if check:
        disp.require_invertible()
    return disp


def character_diagonal(
    dd: DeformedDisplay, chain_values: Mapping[str, WittElem]
) -> TPMatrix:
    """Diagonal matrix of character values for the template's 16 slots.

    ``chain_values`` assigns one Witt element per chain id; slot (chain, k)
    receives its sigma^k image.  The ambient context must satisfy
    sigma^{2d} = id on the chosen values for the diagonal to be a character.
    """
    chars = dd.base.slot_chars
    if chars is None:
        raise DimensionMismatch("display carries no character slot metadata")
    ctx, p, N = dd.ctx, dd.ctx.p, dd.N
    zero = TPoly(p, N, {})
    vals = [chain_values[chain].frobenius(k % ctx.m) for chain, k in chars]
    return tuple(
        tuple(TPoly.const(p, N, vals[i]) if i == j else zero for j in range(len(vals)))
        for i in range(len(vals))
    )


def symbolic_template_deformation(p: int, N: Optional[int] = None) -> TPMatrix:
    """The deformed unit block A + TC with free symbolic parameters, mod p."""
    if N is None:
        N = p**2 + 1
    params = {name: SymPoly.sym(p, name) for name in PARAM_NAMES}
    zero = SymPoly.zero(p)
    a = _pattern_matrix(A_PATTERN, params, zero)
    c = _pattern_matrix(C_PATTERN, params, zero)
    return tuple(
        tuple(TPoly(p, N, {0: a[i][j], 1: c[i][j]}) for j in range(8)) for i in range(8)
    )
