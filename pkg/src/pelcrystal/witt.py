"""Exact arithmetic in the truncated Witt ring W_n(F_{p^m}) for unramified p.

Because p is unramified throughout, W_n(F_{p^m}) is realized as the quotient
(Z/p^n)[x]/(f) where f is a monic degree-m lift of an irreducible polynomial
over F_p; genuine Witt coordinates are never needed.  Elements are coefficient
vectors of length m with entries in [0, p^n).  The canonical Frobenius lift
acts by sending the polynomial generator to the Hensel lift of its p-th power,
and is therefore an honest ring automorphism of order m.

All values are immutable and every operation is pure.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DegreeZero, NotAUnit, NotPrime

Coeffs = Tuple[int, ...]


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k < 4:
        return True
    if k % 2 == 0:
        return False
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


# -- dense polynomial helpers over Z/q, coefficients listed low degree first --


def _poly_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], q: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % q
    return _poly_trim(out)


def _poly_rem(a: Sequence[int], f: Sequence[int], q: int) -> List[int]:
    # f must be monic
    r = _poly_trim([c % q for c in a])
    df = len(f) - 1
    while len(r) > df:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - df
            for i, fi in enumerate(f):
                r[shift + i] = (r[shift + i] - lead * fi) % q
        r.pop()
        _poly_trim(r)
    return r


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], q: int) -> List[int]:
    result = [1]
    base = _poly_rem(a, f, q)
    while e > 0:
        if e & 1:
            result = _poly_rem(_poly_mul(result, base, q), f, q)
        base = _poly_rem(_poly_mul(base, base, q), f, q)
        e >>= 1
    return result


def _poly_add(a: Sequence[int], b: Sequence[int], q: int) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c % q
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % q
    return _poly_trim(out)


def _poly_gcd_fp(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a, b = _poly_trim([c % p for c in a]), _poly_trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        bm = [(c * inv) % p for c in b]
        a, b = b, _poly_rem(a, bm, p)
    return a


def _is_irreducible_fp(f: Sequence[int], p: int) -> bool:
    """Degree-m f is irreducible over F_p iff gcd(x^{p^k} - x, f) = 1 for k < m.

    Any proper factor has degree e <= m-1 and is detected at k = e.
    """
    m = len(f) - 1
    if m == 1:
        return True
    xpk = [0, 1]
    for _ in range(1, m):
        xpk = _poly_powmod(xpk, p, f, p)
        diff = list(xpk)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd_fp(diff, f, p)
        if len(g) != 1:
            return False
    return True


class WittContext:
    """Parameters and precomputed data for W_n(F_{p^m}) arithmetic."""

    __slots__ = ("p", "m", "n", "q", "modulus", "_sigma_mats", "_residue")

    def __init__(self, p: int, m: int, n: int, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if m < 1:
            raise DegreeZero(f"residue degree m = {m} must be >= 1")
        if n < 1:
            raise DegreeZero(f"precision n = {n} must be >= 1")
        self.p = p
        self.m = m
        self.n = n
        self.q = p**n
        if modulus is None:
            modulus = _first_irreducible(p, m)
        modulus = tuple(c % self.q for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise DegreeZero("modulus must be monic of degree m")
        if not _is_irreducible_fp([c % p for c in modulus], p):
            raise DegreeZero("modulus is not irreducible mod p")
        self.modulus = modulus
        self._sigma_mats: Optional[List[List[List[int]]]] = None
        self._residue: Optional[WittContext] = None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WittContext)
            and (self.p, self.m, self.n, self.modulus) == (other.p, other.m, other.n, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.n, self.modulus))

    def __repr__(self) -> str:
        return f"WittContext(p={self.p}, m={self.m}, n={self.n})"

    # -- element constructors ---------------------------------------------

    def elem(self, coeffs: Iterable[int]) -> "WittElem":
        cs = [c % self.q for c in coeffs]
        if len(cs) > self.m:
            cs = _poly_rem(cs, list(self.modulus), self.q)
        cs += [0] * (self.m - len(cs))
        return WittElem(self, tuple(cs))

    def zero(self) -> "WittElem":
        return WittElem(self, (0,) * self.m)

    def one(self) -> "WittElem":
        return self.from_int(1)

    def from_int(self, k: int) -> "WittElem":
        return WittElem(self, (k % self.q,) + (0,) * (self.m - 1))

    def generator(self) -> "WittElem":
        if self.m == 1:
            return self.from_int(-self.modulus[0])
        return self.elem([0, 1])

    def random_elem(self, rng) -> "WittElem":
        return WittElem(self, tuple(rng.randrange(self.q) for _ in range(self.m)))

    def random_unit(self, rng) -> "WittElem":
        while True:
            x = self.random_elem(rng)
            if x.is_unit():
                return x

    def residue_context(self) -> "WittContext":
        """The residue field F_{p^m} as the n = 1 context with the same modulus."""
        if self.n == 1:
            return self
        if self._residue is None:
            self._residue = WittContext(self.p, self.m, 1, [c % self.p for c in self.modulus])
        return self._residue

    def reduce(self, x: "WittElem") -> "WittElem":
        """Reduction mod p into the residue-field context."""
        rc = self.residue_context()
        return WittElem(rc, tuple(c % self.p for c in x.coeffs))

    # -- Frobenius ---------------------------------------------------------

    def _sigma_matrices(self) -> List[List[List[int]]]:
        """Matrices of sigma^k, k = 0..m-1, acting on coefficient columns."""
        if self._sigma_mats is not None:
            return self._sigma_mats
        m, q, p = self.m, self.q, self.p
        f = list(self.modulus)
        # Hensel-lift the root of f congruent to x^p mod p.
        y = _poly_powmod([0, 1], p, f, q)
        fprime = _poly_trim([(i * f[i]) % q for i in range(1, len(f))])
        for _ in range(max(1, self.n.bit_length())):
            fy = _eval_poly_mod(f, y, f, q)
            fpy = _eval_poly_mod([c for c in fprime], y, f, q)
            inv = self._inv_vec(fpy)
            y = _poly_trim(
                [
                    (a - b) % q
                    for a, b in zip(
                        y + [0] * (m - len(y)),
                        _poly_rem(_poly_mul(fy, inv, q), f, q) + [0] * m,
                    )
                ]
            )
        s1 = []
        ypow = [1]
        for i in range(m):
            col = ypow + [0] * (m - len(ypow))
            s1.append([col[r] for r in range(m)])
            ypow = _poly_rem(_poly_mul(ypow, y, q), f, q)
        # s1 is column-major: s1[i] = coeffs of sigma(x^i)
        mats = [[[1 if r == c else 0 for c in range(m)] for r in range(m)]]
        cur = [[s1[c][r] for c in range(m)] for r in range(m)]
        for _ in range(m - 1):
            mats.append(cur)
            cur = _mat_mul_int(mats[1], cur, q)
        # sigma^m must be the identity; cur now holds sigma^m.
        assert cur == mats[0], "Frobenius lift does not have order m"
        self._sigma_mats = mats
        return mats

    def _inv_vec(self, a: List[int]) -> List[int]:
        return list(self.inverse(WittElem(self, tuple(a + [0] * (self.m - len(a))))).coeffs)

    def frobenius(self, x: "WittElem", k: int = 1) -> "WittElem":
        k %= self.m
        if k == 0:
            return x
        mat = self._sigma_matrices()[k]
        q = self.q
        out = [0] * self.m
        for r in range(self.m):
            acc = 0
            row = mat[r]
            for c, xc in enumerate(x.coeffs):
                acc += row[c] * xc
            out[r] = acc % q
        return WittElem(self, tuple(out))

    # -- ring operations ----------------------------------------------------

    def add(self, a: "WittElem", b: "WittElem") -> "WittElem":
        q = self.q
        return WittElem(self, tuple((x + y) % q for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: "WittElem", b: "WittElem") -> "WittElem":
        q = self.q
        return WittElem(self, tuple((x - y) % q for x, y in zip(a.coeffs, b.coeffs)))

    def mul(self, a: "WittElem", b: "WittElem") -> "WittElem":
        prod = _poly_mul(a.coeffs, b.coeffs, self.q)
        red = _poly_rem(prod, list(self.modulus), self.q)
        red += [0] * (self.m - len(red))
        return WittElem(self, tuple(red))

    def inverse(self, a: "WittElem") -> "WittElem":
        """Inverse of a unit, by mod-p inversion followed by Newton lifting."""
        if not a.is_unit():
            raise NotAUnit("element is zero mod p")
        # Inverse in the residue field via Fermat, then z <- z(2 - az) lifting.
        rc = self.residue_context()
        zbar = WittElem(rc, tuple(c % self.p for c in a.coeffs)) ** (self.p**self.m - 2)
        zel = self.elem(zbar.coeffs)
        two = self.from_int(2)
        for _ in range(max(1, self.n.bit_length())):
            zel = self.mul(zel, self.sub(two, self.mul(a, zel)))
        return zel

    # -- Teichmueller and valuation -----------------------------------------

    def teichmuller(self, a) -> "WittElem":
        """Teichmueller representative of a residue-field element.

        ``a`` is an int (for m = 1, or an element of the prime field) or a
        coefficient sequence in the polynomial basis of F_{p^m}.
        """
        if isinstance(a, WittElem):
            coeffs: Sequence[int] = [c % self.p for c in a.coeffs]
        elif isinstance(a, int):
            coeffs = [a % self.p]
        else:
            coeffs = [c % self.p for c in a]
        x = self.elem(coeffs)
        e = self.p**self.m
        for _ in range(self.n):
            x = x**e
        return x

    def valuation(self, x: "WittElem") -> Optional[int]:
        """Largest v < n with x in p^v W, or None for zero-to-precision."""
        best: Optional[int] = None
        for c in x.coeffs:
            if c == 0:
                continue
            v = 0
            while c % self.p == 0:
                c //= self.p
                v += 1
            if best is None or v < best:
                best = v
                if best == 0:
                    return 0
        return best


def _eval_poly_mod(f: Sequence[int], y: Sequence[int], mod: Sequence[int], q: int) -> List[int]:
    # Horner evaluation of f at the algebra element y, mod (mod, q)
    acc: List[int] = []
    for c in reversed(list(f)):
        acc = _poly_rem(_poly_mul(acc, y, q), list(mod), q)
        acc = _poly_add(acc, [c % q], q)
    return acc


def _mat_mul_int(a: List[List[int]], b: List[List[int]], q: int) -> List[List[int]]:
    h = len(a)
    w = len(b[0])
    inner = len(b)
    return [
        [sum(a[r][k] * b[k][c] for k in range(inner)) % q for c in range(w)]
        for r in range(h)
    ]


def _first_irreducible(p: int, m: int) -> Tuple[int, ...]:
    """First monic irreducible of degree m over F_p, in base-p counter order.

    Coefficients (c_0, ..., c_{m-1}) are the base-p digits of an increasing
    counter (c_0 least significant), which pins a deterministic choice.
    """
    for k in range(p**m):
        digits = []
        kk = k
        for _ in range(m):
            digits.append(kk % p)
            kk //= p
        f = digits + [1]
        if _is_irreducible_fp(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class WittElem:
    """Element of W_n(F_{p^m}) in the polynomial basis."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: WittContext, coeffs: Coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WittElem)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs))

    def __repr__(self) -> str:
        return f"W{list(self.coeffs)}"

    def __add__(self, other: "WittElem") -> "WittElem":
        return self.ctx.add(self, other)

    def __sub__(self, other: "WittElem") -> "WittElem":
        return self.ctx.sub(self, other)

    def __neg__(self) -> "WittElem":
        return self.ctx.sub(self.ctx.zero(), self)

    def __mul__(self, other: "WittElem") -> "WittElem":
        return self.ctx.mul(self, other)

    def __pow__(self, e: int) -> "WittElem":
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.ctx.one()
        base = self
        while e > 0:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> "WittElem":
        return self.ctx.inverse(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return any(c % self.ctx.p != 0 for c in self.coeffs)

    def frobenius(self, k: int = 1) -> "WittElem":
        return self.ctx.frobenius(self, k)

    def valuation(self) -> Optional[int]:
        return self.ctx.valuation(self)

    def residue(self) -> "WittElem":
        return self.ctx.reduce(self)


def make_context(p: int, m: int, n: int) -> WittContext:
    """Context for W_n(F_{p^m}) with the deterministic modulus choice."""
    return WittContext(p, m, n)


def frobenius(ctx: WittContext, x: WittElem) -> WittElem:
    return ctx.frobenius(x)


def teichmuller(ctx: WittContext, a) -> WittElem:
    return ctx.teichmuller(a)


def valuation(ctx: WittContext, x: WittElem) -> Optional[int]:
    return ctx.valuation(x)
