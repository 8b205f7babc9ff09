"""Desk-scale verifier of the degeneracy/mass mechanism on elliptic curves.

The moduli space the main machinery speaks about is not enumerable, so this
module validates the identical mechanism where enumeration is possible:
vanishing of a Hasse invariant cuts out the supersingular locus, the defining
polynomial is squarefree (multiplicity one), and the automorphism-weighted
count is proportional to an Euler characteristic - here exactly (p-1)/24.

Supersingular j-invariants live in F_{p^2}, realized as F_p[s]/(s^2 - ns) for
the smallest positive quadratic nonresidue ns.  Elements are (c0, c1) pairs,
vectorized as numpy int64 arrays; all arithmetic is exact mod p.  Counting is
cross-validated two ways: a sweep of Hasse invariants of one Weierstrass model
per j, and the roots of the Deuring polynomial H_p mapped through the
lambda -> j formula.  Automorphism orders are brute-forced as u-twist
stabilizers, never read from tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from .errors import MassMismatch, MethodDisagreement, NotPrime, SingularCurve
from .witt import is_prime

F2 = Tuple[np.ndarray, np.ndarray]  # component arrays (c0, c1) of c0 + c1*s


@dataclass(frozen=True)
class CurveShort:
    """Short Weierstrass curve y^2 = x^3 + ax + b over F_p, p >= 5."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p < 5 or not is_prime(self.p):
            raise NotPrime(f"p = {self.p} must be a prime >= 5")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if (4 * self.a**3 + 27 * self.b**2) % self.p == 0:
            raise SingularCurve(f"discriminant vanishes mod {self.p}")


def hasse_invariant(c: CurveShort) -> int:
    """Coefficient of x^{p-1} in (x^3 + ax + b)^{(p-1)/2} mod p.

    Zero exactly for supersingular curves.
    """
    p = c.p
    m = (p - 1) // 2
    # truncated power: only degrees < p matter
    base = [c.b % p, c.a % p, 0, 1]
    acc = [1]
    e = m
    while e:
        if e & 1:
            acc = _poly_mul_trunc(acc, base, p)
        base = _poly_mul_trunc(base, base, p)
        e >>= 1
    return acc[p - 1] if len(acc) > p - 1 else 0


def _poly_mul_trunc(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    out = [0] * min(len(a) + len(b) - 1, p)
    for i, ai in enumerate(a):
        if ai == 0 or i >= p:
            continue
        top = min(len(b), p - i)
        for j in range(top):
            out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


def deuring_polynomial(p: int) -> List[int]:
    """H_p(l) = sum C(m, i)^2 l^i mod p, m = (p-1)/2; ascending coefficients."""
    _require_p(p)
    m = (p - 1) // 2
    return [comb(m, i) ** 2 % p for i in range(m + 1)]


def squarefree_check(p: int) -> bool:
    """gcd(H_p, H_p') = 1 over F_p."""
    h = deuring_polynomial(p)
    dh = [(i * h[i]) % p for i in range(1, len(h))]
    g = _gcd_fp(h, dh, p)
    return len(g) == 1


def _gcd_fp(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    def trim(x):
        x = list(x)
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        bm = [(c * inv) % p for c in b]
        r = list(a)
        while len(r) >= len(bm):
            lead = r[-1]
            if lead:
                shift = len(r) - len(bm)
                for i, bi in enumerate(bm):
                    r[shift + i] = (r[shift + i] - lead * bi) % p
            r.pop()
            r = trim(r)
        a, b = b, r
    return a if a else [0]


# -- F_{p^2} vector arithmetic -------------------------------------------------


def nonresidue(p: int) -> int:
    for ns in range(2, p):
        if pow(ns, (p - 1) // 2, p) == p - 1:
            return ns
    raise AssertionError("no quadratic nonresidue found")


def _f2_mul(p: int, ns: int, x: F2, y: F2) -> F2:
    x0, x1 = x
    y0, y1 = y
    return ((x0 * y0 + ns * x1 * y1) % p, (x0 * y1 + x1 * y0) % p)


def _f2_pow(p: int, ns: int, x: F2, e: int) -> F2:
    r0 = np.ones_like(x[0])
    r1 = np.zeros_like(x[1])
    b0, b1 = x[0] % p, x[1] % p
    while e:
        if e & 1:
            r0, r1 = _f2_mul(p, ns, (r0, r1), (b0, b1))
        b0, b1 = _f2_mul(p, ns, (b0, b1), (b0, b1))
        e >>= 1
    return (r0, r1)


def _f2_inv(p: int, ns: int, x: F2) -> F2:
    return _f2_pow(p, ns, x, p * p - 2)


def _f2_scal(p: int, k: int, x: F2) -> F2:
    return ((k % p) * x[0] % p, (k % p) * x[1] % p)


def _is_zero(x: F2) -> np.ndarray:
    return (x[0] == 0) & (x[1] == 0)


def _hasse_generic_sweep(p: int, ns: int, a: F2, b: F2) -> np.ndarray:
    """Hasse invariants (supersingular mask) for curve arrays with a, b != 0.

    Expands the x^{p-1} coefficient of (x^3+ax+b)^m as the multinomial sum
    sum_i C(m; i, 2m-3i, 2i-m) a^{2m-3i} b^{2i-m} over ceil(m/2) <= i <= 2m/3.
    """
    m = (p - 1) // 2
    i0 = (m + 1) // 2
    i1 = (2 * m) // 3
    # A = a^{2m-3*i1} * b^{2*i0-m} * sum_k c_{i0+k} u^{K-k} v^k, u = a^3, v = b^2
    kmax = i1 - i0
    u = _f2_mul(p, ns, _f2_mul(p, ns, a, a), a)
    v = _f2_mul(p, ns, b, b)
    upow = [(np.ones_like(u[0]), np.zeros_like(u[1]))]
    vpow = [(np.ones_like(v[0]), np.zeros_like(v[1]))]
    for _ in range(kmax):
        upow.append(_f2_mul(p, ns, upow[-1], u))
        vpow.append(_f2_mul(p, ns, vpow[-1], v))
    acc0 = np.zeros_like(u[0])
    acc1 = np.zeros_like(u[1])
    fact = [1] * (m + 1)
    for i in range(1, m + 1):
        fact[i] = fact[i - 1] * i
    for k in range(kmax + 1):
        i = i0 + k
        j = 2 * m - 3 * i
        l = 2 * i - m
        coeff = (fact[m] // (fact[i] * fact[j] * fact[l])) % p
        if coeff == 0:
            continue
        term = _f2_mul(p, ns, upow[kmax - k], vpow[k])
        acc0 = (acc0 + coeff * term[0]) % p
        acc1 = (acc1 + coeff * term[1]) % p
    lead = _f2_mul(p, ns, _f2_pow(p, ns, a, 2 * m - 3 * i1), _f2_pow(p, ns, b, 2 * i0 - m))
    total = _f2_mul(p, ns, lead, (acc0, acc1))
    return _is_zero(total)


def _enumerate_f2(p: int) -> F2:
    c0, c1 = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    return (c0.ravel(), c1.ravel())


def _supersingular_j_by_sweep(p: int) -> set:
    """Method A: Hasse invariant of one model per j over F_{p^2}."""
    ns = nonresidue(p)
    j0, j1 = _enumerate_f2(p)
    special = (j0 % p == 0) & (j1 == 0)
    special |= (j0 % p == 1728 % p) & (j1 == 0)
    mask = ~special
    j = (j0[mask], j1[mask])
    k = ((1728 - j[0]) % p, (-j[1]) % p)
    jk = _f2_mul(p, ns, j, k)
    a = _f2_scal(p, 3, jk)                      # a = 3 j (1728 - j)
    b = _f2_scal(p, 2, _f2_mul(p, ns, jk, k))   # b = 2 j (1728 - j)^2
    ss = _hasse_generic_sweep(p, ns, a, b)
    out = {(int(x), int(y)) for x, y in zip(j[0][ss], j[1][ss])}
    if hasse_invariant(CurveShort(p, 0, 1)) == 0:
        out.add((0, 0))
    if hasse_invariant(CurveShort(p, 1, 0)) == 0:
        out.add((1728 % p, 0))
    return out


def _supersingular_j_by_deuring(p: int) -> set:
    """Method B: roots of H_p over F_{p^2} pushed through lambda -> j."""
    ns = nonresidue(p)
    h = deuring_polynomial(p)
    lam = _enumerate_f2(p)
    val0 = np.zeros_like(lam[0])
    val1 = np.zeros_like(lam[1])
    for c in reversed(h):
        val0, val1 = _f2_mul(p, ns, (val0, val1), lam)
        val0 = (val0 + c) % p
    roots = _is_zero((val0, val1))
    lam = (lam[0][roots], lam[1][roots])
    if lam[0].size != len(h) - 1:
        raise MethodDisagreement(
            f"H_{p} has {lam[0].size} roots in F_p2, expected degree {len(h) - 1}"
        )
    one = (np.ones_like(lam[0]), np.zeros_like(lam[1]))
    lam2 = _f2_mul(p, ns, lam, lam)
    num = ((lam2[0] - lam[0] + 1) % p, (lam2[1] - lam[1]) % p)   # l^2 - l + 1
    num = _f2_pow(p, ns, num, 3)
    num = _f2_scal(p, 256, num)
    lm1 = ((lam[0] - 1) % p, lam[1])
    den = _f2_mul(p, ns, lam2, _f2_mul(p, ns, lm1, lm1))          # l^2 (l-1)^2
    j = _f2_mul(p, ns, num, _f2_inv(p, ns, den))
    del one
    return {(int(x), int(y)) for x, y in zip(j[0], j[1])}


def count_supersingular(p: int) -> Tuple[int, List[Tuple[int, int]]]:
    """Supersingular j-invariants in F_{p^2}, cross-validated two ways.

    j-invariants are encoded as (c0, c1) with j = c0 + c1*s over the fixed
    nonresidue basis; the list is sorted lexicographically.
    """
    _require_p(p)
    sweep = _supersingular_j_by_sweep(p)
    roots = _supersingular_j_by_deuring(p)
    if sweep != roots:
        raise MethodDisagreement(
            f"sweep found {sorted(sweep)} but Deuring roots give {sorted(roots)}"
        )
    ordered = sorted(sweep)
    return len(ordered), ordered


def automorphism_order(p: int, j: Tuple[int, int]) -> int:
    """|Aut| of a model curve with invariant j, brute-forced over F_{p^2}.

    Every geometric automorphism of a short Weierstrass curve is
    (x, y) -> (u^2 x, u^3 y) with u^4 a = a and u^6 b = b, and all of them are
    F_{p^2}-rational, so a sweep over u in F_{p^2}^x counts the lot.
    """
    ns = nonresidue(p)
    a, b = _model_for_j(p, ns, j)
    u = _enumerate_f2(p)
    unit = ~_is_zero(u)
    u = (u[0][unit], u[1][unit])
    u2 = _f2_mul(p, ns, u, u)
    u4 = _f2_mul(p, ns, u2, u2)
    u6 = _f2_mul(p, ns, u4, u2)
    ok = np.ones_like(u[0], dtype=bool)
    if not (a[0] == 0 and a[1] == 0):
        fa = _f2_mul(p, ns, u4, (np.full_like(u[0], a[0]), np.full_like(u[1], a[1])))
        ok &= (fa[0] == a[0]) & (fa[1] == a[1])
    if not (b[0] == 0 and b[1] == 0):
        fb = _f2_mul(p, ns, u6, (np.full_like(u[0], b[0]), np.full_like(u[1], b[1])))
        ok &= (fb[0] == b[0]) & (fb[1] == b[1])
    return int(ok.sum())


def _model_for_j(p: int, ns: int, j: Tuple[int, int]) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    if j == (0, 0):
        return (0, 0), (1, 0)
    if j == (1728 % p, 0):
        return (1, 0), (0, 0)
    j0 = (np.array([j[0]], dtype=np.int64), np.array([j[1]], dtype=np.int64))
    k = ((1728 - j0[0]) % p, (-j0[1]) % p)
    jk = _f2_mul(p, ns, j0, k)
    a = _f2_scal(p, 3, jk)
    b = _f2_scal(p, 2, _f2_mul(p, ns, jk, k))
    return (int(a[0][0]), int(a[1][0])), (int(b[0][0]), int(b[1][0]))


def eichler_mass(p: int) -> Fraction:
    """Sum of 1/|Aut| over supersingular curves up to geometric isomorphism.

    Computed by brute force and asserted equal to (p-1)/24.
    """
    _, js = count_supersingular(p)
    mass = Fraction(0)
    for j in js:
        mass += Fraction(1, automorphism_order(p, j))
    if mass != Fraction(p - 1, 24):
        raise MassMismatch(f"computed mass {mass} but (p-1)/24 = {Fraction(p - 1, 24)}")
    return mass


def point_count_f2(p: int, a: Tuple[int, int], b: Tuple[int, int]) -> int:
    """#E(F_{p^2}) by literal character sums; cross-check oracle for tests."""
    ns = nonresidue(p)
    q = p * p
    x = _enumerate_f2(p)
    x2 = _f2_mul(p, ns, x, x)
    x3 = _f2_mul(p, ns, x2, x)
    ax = _f2_mul(p, ns, (np.full_like(x[0], a[0]), np.full_like(x[1], a[1])), x)
    f = ((x3[0] + ax[0] + b[0]) % p, (x3[1] + ax[1] + b[1]) % p)
    chi = _f2_pow(p, ns, f, (q - 1) // 2)
    # chi is 0, 1 or -1 (= p-1 with zero second component)
    vals = np.zeros_like(chi[0])
    vals[(chi[0] == 1) & (chi[1] == 0)] = 1
    vals[(chi[0] == p - 1) & (chi[1] == 0)] = -1
    assert np.all((chi[1] == 0)), "quadratic character landed outside the prime field"
    return int(q + 1 + vals.sum())


def is_supersingular_by_counting(p: int, a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    return point_count_f2(p, a, b) % p == 1


def _require_p(p: int) -> None:
    if p < 5 or not is_prime(p):
        raise NotPrime(f"p = {p} must be a prime >= 5")
