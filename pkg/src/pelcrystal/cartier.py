"""Classical Cartier descent on a truncated disk: p-curvature and round-trip.

Connections live on free modules over R = F_p[t]/(t^N) with N a multiple of p,
the smallest base where t^p is a nonzero Frobenius-pulled coordinate and d/dt
is well defined on the quotient.  nabla(d/dt) = d/dt + M for an h x h matrix M
of truncated polynomials.  The p-curvature is the p-fold operator composite,
which Jacobson's identity guarantees to be linear over functions; its
vanishing is exactly the condition under which the degreewise solver produces
a full basis of horizontal sections, i.e. the module descends along Frobenius.

Polynomials are dense coefficient lists (ascending, length N); matrices are
nested lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import (
    DegreeZero,
    InsufficientTruncation,
    NonLinearResult,
    NotPrime,
    PCurvatureNonzero,
)
from .witt import is_prime

Poly = List[int]
PolyMatrix = List[List[Poly]]


@dataclass(frozen=True)
class ConnectionModule:
    """nabla(d/dt) = d/dt + conn on R^h, R = F_p[t]/(t^N), p | N."""

    p: int
    N: int
    rank: int
    conn: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"p = {self.p} is not prime")
        if self.N < self.p or self.N % self.p != 0:
            raise DegreeZero(f"truncation N = {self.N} must be a positive multiple of p")
        if self.rank < 1:
            raise DegreeZero("rank must be >= 1")
        conn = tuple(
            tuple(_freeze(self.p, self.N, e) for e in row) for row in self.conn
        )
        if len(conn) != self.rank or any(len(r) != self.rank for r in conn):
            raise DegreeZero("connection matrix shape disagrees with rank")
        object.__setattr__(self, "conn", conn)

    def matrix(self) -> PolyMatrix:
        return [[list(e) for e in row] for row in self.conn]


def _freeze(p: int, N: int, e: Sequence[int]) -> Tuple[int, ...]:
    e = [c % p for c in e][:N]
    e += [0] * (N - len(e))
    return tuple(e)


def _pzero(N: int) -> Poly:
    return [0] * N


def _padd(a: Poly, b: Poly, p: int) -> Poly:
    return [(x + y) % p for x, y in zip(a, b)]


def _pmul(a: Poly, b: Poly, p: int) -> Poly:
    N = len(a)
    out = [0] * N
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(N - i):
            bj = b[j]
            if bj:
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _pderiv(a: Poly, p: int) -> Poly:
    return [(k * a[k]) % p for k in range(1, len(a))] + [0]


def _mzero(h: int, N: int) -> PolyMatrix:
    return [[_pzero(N) for _ in range(h)] for _ in range(h)]


def _madd(a: PolyMatrix, b: PolyMatrix, p: int) -> PolyMatrix:
    return [[_padd(x, y, p) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mmul(a: PolyMatrix, b: PolyMatrix, p: int) -> PolyMatrix:
    h = len(a)
    N = len(a[0][0])
    out = _mzero(h, N)
    for i in range(h):
        for k in range(h):
            aik = a[i][k]
            if not any(aik):
                continue
            for j in range(h):
                out[i][j] = _padd(out[i][j], _pmul(aik, b[k][j], p), p)
    return out


def _mderiv(a: PolyMatrix, p: int) -> PolyMatrix:
    return [[_pderiv(e, p) for e in row] for row in a]


def _mis_zero(a: PolyMatrix) -> bool:
    return all(not any(e) for row in a for e in row)


def p_curvature(cm: ConnectionModule) -> PolyMatrix:
    """Matrix of (d/dt + M)^p; linear over functions by Jacobson's identity.

    The composite is tracked as sum_j C_j (d/dt)^j; after p steps every C_j
    with 1 <= j <= p-1 must vanish (and C_p = I dies since (d/dt)^p = 0 on R).
    A surviving differential term indicates a bug, never bad input.
    """
    p, h, N = cm.p, cm.rank, cm.N
    m = cm.matrix()
    # coeffs[j] = C_j of the current composite
    coeffs: List[PolyMatrix] = [[[list(e) for e in row] for row in m]]
    ident = _mzero(h, N)
    for i in range(h):
        ident[i][i][0] = 1
    coeffs.append(ident)
    for _ in range(p - 1):
        new: List[PolyMatrix] = [_mzero(h, N) for _ in range(len(coeffs) + 1)]
        for j, cj in enumerate(coeffs):
            new[j] = _madd(new[j], _mderiv(cj, p), p)
            new[j] = _madd(new[j], _mmul(m, cj, p), p)
            new[j + 1] = _madd(new[j + 1], cj, p)
        coeffs = new
    for j in range(1, p):
        if not _mis_zero(coeffs[j]):
            raise NonLinearResult(
                f"p-fold composite kept a differential term of order {j}"
            )
    return coeffs[0]


def horizontal_sections(cm: ConnectionModule) -> List[List[Poly]]:
    """Basis of solutions of nabla(s) = 0, one per standard initial vector.

    Solves (k+1) s_{k+1} = -(M s)_k degreewise.  At steps with p | k+1 the
    right side must vanish (guaranteed by psi = 0 and p | N) and the
    coefficient is a free parameter of the descended module, pinned to zero.
    """
    psi = p_curvature(cm)
    if not _mis_zero(psi):
        raise PCurvatureNonzero("connection has nonzero p-curvature")
    return [_solve_from(cm, e) for e in range(cm.rank)]


def _solve_from(cm: ConnectionModule, basis_index: int) -> List[Poly]:
    p, h, N = cm.p, cm.rank, cm.N
    m = cm.conn
    s: List[List[int]] = [[0] * N for _ in range(h)]
    s[basis_index][0] = 1
    for k in range(N - 1):
        # rhs_i = coefficient of t^k in (M s)_i
        rhs = []
        for i in range(h):
            acc = 0
            for l in range(h):
                mi = m[i][l]
                sl = s[l]
                for d in range(k + 1):
                    if mi[d]:
                        acc += mi[d] * sl[k - d]
            rhs.append(acc % p)
        if (k + 1) % p == 0:
            if any(rhs):
                raise InsufficientTruncation(
                    f"obstruction at degree {k + 1} despite vanishing p-curvature"
                )
            continue
        inv = pow((k + 1) % p, -1, p)
        for i in range(h):
            s[i][k + 1] = (-rhs[i] * inv) % p
    return s


def descent_roundtrip(cm: ConnectionModule) -> bool:
    """Gauge the connection to the trivial one by its horizontal frame.

    With psi = 0 the solution columns assemble into g with g(0) = I and
    M g + g' = 0, so conjugating by g trivializes the connection exactly.
    """
    sols = horizontal_sections(cm)
    p, h = cm.p, cm.rank
    g: PolyMatrix = [[list(sols[j][i]) for j in range(h)] for i in range(h)]
    mg = _mmul(cm.matrix(), g, p)
    total = _madd(mg, _mderiv(g, p), p)
    return _mis_zero(total)
