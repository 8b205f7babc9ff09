"""Exact matrix algebra over W_n(F_{p^m}).

Matrices are tuples of tuples of WittElem.  The characteristic polynomial uses
the Berkowitz vector method, which is division free: entries live in a ring
with zero divisors mod p^n, so fraction-free elimination and Faddeev-LeVerrier
(which divides by integers sharing factors with p) are both off the table.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotAUnit
from .witt import WittContext, WittElem

Matrix = Tuple[Tuple[WittElem, ...], ...]


def mat(rows: Sequence[Sequence[WittElem]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(ctx: WittContext, h: int) -> Matrix:
    one, zero = ctx.one(), ctx.zero()
    return tuple(tuple(one if i == j else zero for j in range(h)) for i in range(h))


def zeros(ctx: WittContext, h: int, w: int) -> Matrix:
    zero = ctx.zero()
    return tuple((zero,) * w for _ in range(h))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
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


def mat_scal(c: WittElem, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_sigma(a: Matrix, k: int = 1) -> Matrix:
    return tuple(tuple(x.frobenius(k) for x in row) for row in a)


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def mat_residue(a: Matrix) -> Matrix:
    return tuple(tuple(x.residue() for x in row) for row in a)


def charpoly(a: Matrix, ctx: WittContext) -> List[WittElem]:
    """Coefficients [1, b_1, ..., b_h] of det(lambda*I - A), leading first.

    Berkowitz vector iteration over principal submatrices.
    """
    h = len(a)
    one = ctx.one()
    if h == 0:
        return [one]
    poly = [one, -a[0][0]]
    for i in range(1, h):
        row = [a[i][c] for c in range(i)]
        col = [a[r][i] for r in range(i)]
        # first column of the Toeplitz matrix:
        # [1, -a_ii, -R.S, -R.M.S, -R.M^2.S, ...]
        toecol = [one, -a[i][i]]
        v = col
        for k in range(i):
            if k > 0:
                v = [_dotrow(a, r, i, v) for r in range(i)]
            toecol.append(-_dot(row, v))
        newpoly = []
        for r in range(i + 2):
            acc: Optional[WittElem] = None
            for c in range(min(len(poly), r + 1)):
                term = toecol[r - c] * poly[c]
                acc = term if acc is None else acc + term
            assert acc is not None
            newpoly.append(acc)
        poly = newpoly
    return poly


def _dot(u: Sequence[WittElem], v: Sequence[WittElem]) -> WittElem:
    acc = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        acc = acc + x * y
    return acc


def _dotrow(a: Matrix, r: int, i: int, v: Sequence[WittElem]) -> WittElem:
    acc = a[r][0] * v[0]
    for c in range(1, i):
        acc = acc + a[r][c] * v[c]
    return acc


def charpoly_direct(a: Matrix, ctx: WittContext) -> List[WittElem]:
    """Leibniz-sum characteristic polynomial, for cross-checking small sizes."""
    import itertools

    h = len(a)
    zero, one = ctx.zero(), ctx.one()
    # polynomials in lambda as coefficient lists, low degree first
    ent = [
        [
            ([-a[i][j], one] if i == j else [-a[i][j]])
            for j in range(h)
        ]
        for i in range(h)
    ]
    total = [zero] * (h + 1)
    for perm in itertools.permutations(range(h)):
        sign = _perm_sign(perm)
        prod = [one]
        for i in range(h):
            prod = _polymul_elem(prod, ent[i][perm[i]], zero)
        for d, c in enumerate(prod):
            total[d] = total[d] + (c if sign > 0 else -c)
    return list(reversed(total))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def _polymul_elem(a: List[WittElem], b: List[WittElem], zero: WittElem) -> List[WittElem]:
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def rank_residue(a: Matrix, ctx: WittContext) -> int:
    """Rank of the mod-p reduction over the residue field F_{p^m}."""
    rows = [list(r) for r in mat_residue(a)]
    h = len(rows)
    w = len(rows[0]) if h else 0
    rank = 0
    prow = 0
    for col in range(w):
        piv = None
        for r in range(prow, h):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        rows[prow], rows[piv] = rows[piv], rows[prow]
        inv = rows[prow][col].inverse()
        rows[prow] = [inv * x for x in rows[prow]]
        for r in range(h):
            if r != prow and not rows[r][col].is_zero():
                c = rows[r][col]
                rows[r] = [x - c * y for x, y in zip(rows[r], rows[prow])]
        rank += 1
        prow += 1
        if prow == h:
            break
    return rank


def det_residue(a: Matrix, ctx: WittContext) -> WittElem:
    """Determinant of the mod-p reduction, in the residue field."""
    rows = [list(r) for r in mat_residue(a)]
    h = len(rows)
    rc = ctx.residue_context()
    det = rc.one()
    for col in range(h):
        piv = None
        for r in range(col, h):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return rc.zero()
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, h):
            if not rows[r][col].is_zero():
                c = rows[r][col] * inv
                rows[r] = [x - c * y for x, y in zip(rows[r], rows[col])]
    return det


def is_invertible(a: Matrix, ctx: WittContext) -> bool:
    return not det_residue(a, ctx).is_zero()


def mat_inv(a: Matrix, ctx: WittContext) -> Matrix:
    """Inverse over W_n via elimination with unit pivots."""
    h = len(a)
    rows = [list(r) + list(idr) for r, idr in zip(a, identity(ctx, h))]
    for col in range(h):
        piv = None
        for r in range(col, h):
            if rows[r][col].is_unit():
                piv = r
                break
        if piv is None:
            raise NotAUnit("matrix is not invertible over W_n")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [inv * x for x in rows[col]]
        for r in range(h):
            if r != col:
                c = rows[r][col]
                if not c.is_zero():
                    rows[r] = [x - c * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[h:]) for row in rows)


def random_matrix(ctx: WittContext, h: int, rng) -> Matrix:
    return tuple(tuple(ctx.random_elem(rng) for _ in range(h)) for _ in range(h))


def random_invertible(ctx: WittContext, h: int, rng) -> Matrix:
    while True:
        a = random_matrix(ctx, h, rng)
        if is_invertible(a, ctx):
            return a
