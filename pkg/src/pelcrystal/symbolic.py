"""Tiny exact symbolic ring for pinning twisted-product identities.

Elements are multivariate polynomials over F_p in formal parameters and their
Frobenius images: a symbol is a (name, sigma_power) pair, and frobenius()
shifts every sigma_power by one.  This is just enough structure to state the
iterated Hasse-Witt entries as exact polynomial identities in free display
parameters, with no numeric specialization.
"""

from __future__ import annotations

from typing import Dict, Tuple

Symbol = Tuple[str, int]
Monomial = Tuple[Tuple[Symbol, int], ...]  # sorted ((name, sigpow), exponent)


class SymPoly:
    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Dict[Monomial, int]):
        self.p = p
        clean = {}
        for mono, c in terms.items():
            c %= p
            if c:
                clean[mono] = c
        self.terms = clean

    @staticmethod
    def zero(p: int) -> "SymPoly":
        return SymPoly(p, {})

    @staticmethod
    def const(p: int, c: int) -> "SymPoly":
        return SymPoly(p, {(): c % p})

    @staticmethod
    def sym(p: int, name: str, sigma_power: int = 0) -> "SymPoly":
        return SymPoly(p, {(((name, sigma_power), 1),): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymPoly) and self.p == other.p and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.p, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return SymPoly(self.p, out)

    def __neg__(self) -> "SymPoly":
        return SymPoly(self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return SymPoly(self.p, out)

    def frobenius(self, k: int = 1) -> "SymPoly":
        # coefficients live in F_p and are Frobenius-fixed
        out: Dict[Monomial, int] = {}
        for mono, c in self.terms.items():
            shifted = tuple(sorted((((name, sp + k), e) for (name, sp), e in mono)))
            out[shifted] = out.get(shifted, 0) + c
        return SymPoly(self.p, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono, c in sorted(self.terms.items()):
            factors = [str(c)] if c != 1 or not mono else []
            for (name, sp), e in mono:
                s = name + "'" * sp
                factors.append(s if e == 1 else f"{s}^{e}")
            bits.append("*".join(factors) if factors else "1")
        return " + ".join(bits)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    acc: Dict[Symbol, int] = {}
    for sym, e in m1:
        acc[sym] = acc.get(sym, 0) + e
    for sym, e in m2:
        acc[sym] = acc.get(sym, 0) + e
    return tuple(sorted(acc.items()))
