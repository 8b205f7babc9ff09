"""Character and orbit combinatorics of the PEL decomposition.

Embeddings are indexed by (orbit, position, bar): orbit i has 2*f_i positions
permuted cyclically by sigma, the star involution shifts by f_i, and bar flips
the conjugation flag.  The distinguished orbit is orbit 1; positions 0 and f_1
are the two embeddings restricting to the split real place (and their barred
mates restrict to its conjugate).  Everything downstream - summand ranks and
degrees, the Frobenius chain tags, global Newton polygons, the mass formula -
is a pure function of these labels.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import DegreeZero, NotInDistinguishedOrbit, NotPrime
from .semilinear import NewtonPolygon
from .witt import is_prime

UNIFORMIZING = "uniformizing"
UNITARY = "unitary"

ISO = "ISO"
INJECTIVE = "INJECTIVE"
SURJECTIVE = "SURJECTIVE"
ZERO = "ZERO"
NONZERO_SHARED_ZERO_LOCUS = "NONZERO_SHARED_ZERO_LOCUS"


@dataclass(frozen=True)
class PelDatum:
    """Degrees of the PEL setting: p, total degree n, local degrees, genus."""

    p: int
    n: int
    local_degrees: Tuple[int, ...]
    g: int

    def __post_init__(self):
        object.__setattr__(self, "local_degrees", tuple(self.local_degrees))
        if not is_prime(self.p):
            raise NotPrime(f"p = {self.p} is not prime")
        if self.n < 2:
            raise DegreeZero(f"total degree n = {self.n} must be >= 2")
        if not self.local_degrees or any(f < 1 for f in self.local_degrees):
            raise DegreeZero("local degrees must be positive")
        if sum(self.local_degrees) != self.n:
            raise DegreeZero(
                f"local degrees {self.local_degrees} do not sum to n = {self.n}"
            )
        if self.g < 2:
            raise DegreeZero(f"genus g = {self.g} must be >= 2")

    @property
    def d(self) -> int:
        return self.local_degrees[0]

    @property
    def r(self) -> int:
        return len(self.local_degrees)

    def orbit_size(self, orbit: int) -> int:
        return 2 * self.local_degrees[orbit - 1]


@dataclass(frozen=True)
class Embedding:
    """One character label: orbit index (1-based), position mod 2 f_i, bar flag."""

    orbit: int
    pos: int
    bar: bool = False

    def sigma(self, datum: PelDatum) -> "Embedding":
        return Embedding(self.orbit, (self.pos + 1) % datum.orbit_size(self.orbit), self.bar)

    def sigma_pow(self, datum: PelDatum, k: int) -> "Embedding":
        return Embedding(self.orbit, (self.pos + k) % datum.orbit_size(self.orbit), self.bar)

    def star(self, datum: PelDatum) -> "Embedding":
        f = datum.local_degrees[self.orbit - 1]
        return Embedding(self.orbit, (self.pos + f) % (2 * f), self.bar)

    def conjugate(self) -> "Embedding":
        return Embedding(self.orbit, self.pos, not self.bar)

    def restricts_to_tau(self, datum: PelDatum) -> bool:
        return self.orbit == 1 and not self.bar and self.pos in (0, datum.d)

    def restricts_to_tau_bar(self, datum: PelDatum) -> bool:
        return self.orbit == 1 and self.bar and self.pos in (0, datum.d)

    def is_uniformizing(self, datum: PelDatum) -> bool:
        return self.orbit == 1 and self.pos in (0, datum.d)

    def in_distinguished_orbit(self) -> bool:
        return self.orbit == 1

    def label(self) -> str:
        base = f"e{self.orbit}.{self.pos}"
        return base + ("~" if self.bar else "")

    def to_json(self) -> dict:
        return {"orbit": self.orbit, "pos": self.pos, "bar": self.bar}


@dataclass(frozen=True)
class SummandDescriptor:
    """Ranks and degrees of the two Hodge pieces of one rank-two summand."""

    embedding: Embedding
    rank_10: int
    rank_01: int
    deg_10: int
    deg_01: int
    higgs_type: str

    def to_json(self) -> dict:
        d = self.embedding.to_json()
        d.update(
            rank_10=self.rank_10,
            rank_01=self.rank_01,
            deg_10=self.deg_10,
            deg_01=self.deg_01,
            higgs_type=self.higgs_type,
        )
        return d


@dataclass(frozen=True)
class ChainEdge:
    source: Embedding
    target: Embedding
    tag: str

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(), "tag": self.tag}


def build_embeddings(datum: PelDatum) -> List[Embedding]:
    """All 4n labels in deterministic (orbit, pos, bar) order."""
    out = []
    for orbit in range(1, datum.r + 1):
        for pos in range(datum.orbit_size(orbit)):
            for bar in (False, True):
                out.append(Embedding(orbit, pos, bar))
    return out


def summand_table(datum: PelDatum) -> List[SummandDescriptor]:
    """Ranks and degrees of all 4n rank-two summands; total rank 8n.

    Uniformizing summands (both Hodge pieces nonzero) carry degrees
    (g-1, 1-g); unitary summands carry a single rank-two piece of degree 0,
    on the (0,1) side for unbarred labels and the (1,0) side for barred ones.
    """
    g = datum.g
    out = []
    for e in build_embeddings(datum):
        if e.is_uniformizing(datum):
            out.append(SummandDescriptor(e, 1, 1, g - 1, 1 - g, UNIFORMIZING))
        elif not e.bar:
            out.append(SummandDescriptor(e, 0, 2, 0, 0, UNITARY))
        else:
            out.append(SummandDescriptor(e, 2, 0, 0, 0, UNITARY))
    return out


def frobenius_chain(datum: PelDatum) -> List[ChainEdge]:
    """Tag every edge (0,1)-piece of phi -> (0,1)-piece of sigma(phi).

    Outside the distinguished orbit every edge is an isomorphism.  Inside it,
    for d >= 2 the unbarred/starred runs go INJECTIVE (at positions 0 and d),
    ISO in the middle, SURJECTIVE (at positions d-1 and 2d-1), while every
    barred edge is the zero map (its source or target (0,1)-piece vanishes).
    For d = 1 the four distinguished edges are nonzero maps of line bundles
    sharing one common zero locus.
    """
    d = datum.d
    out = []
    for e in build_embeddings(datum):
        target = e.sigma(datum)
        if e.orbit != 1:
            tag = ISO
        elif d == 1:
            tag = NONZERO_SHARED_ZERO_LOCUS
        elif e.bar:
            tag = ZERO
        else:
            i = e.pos % d  # position within the unstarred/starred run
            if i == 0:
                tag = INJECTIVE
            elif i == d - 1:
                tag = SURJECTIVE
            else:
                tag = ISO
        out.append(ChainEdge(e, target, tag))
    return out


def assemble_global_polygon(datum: PelDatum, orbit1_supersingular: bool) -> NewtonPolygon:
    """Global Newton polygon: the generic or the supersingular type.

    Generic: (4n-2d) x 0, 2d x 1/d, 2d x (1-1/d), (4n-2d) x 1.
    Supersingular: 4(n-d) x 0, 4d x 1/2d, 4d x (1-1/2d), 4(n-d) x 1.
    Coinciding slopes merge by exact rational equality.
    """
    n, d = datum.n, datum.d
    if orbit1_supersingular:
        pairs = [
            (Fraction(0), 4 * (n - d)),
            (Fraction(1, 2 * d), 4 * d),
            (1 - Fraction(1, 2 * d), 4 * d),
            (Fraction(1), 4 * (n - d)),
        ]
    else:
        pairs = [
            (Fraction(0), 4 * n - 2 * d),
            (Fraction(1, d), 2 * d),
            (1 - Fraction(1, d), 2 * d),
            (Fraction(1), 4 * n - 2 * d),
        ]
    return NewtonPolygon.from_pairs(pairs)


@dataclass(frozen=True)
class MassResult:
    """Point count of the Newton-jumping locus, in both displayed forms."""

    mass: int
    cycle_form: int
    degenerate: bool = False

    def to_json(self) -> dict:
        return {"S": self.mass, "cycle_form": self.cycle_form}


def mass_formula(p: int, d: int, g: int) -> MassResult:
    """|S| = (p^d - 1)(g - 1), with the cycle-class form (1/2)(1-p^d)(2-2g).

    The two forms are asserted equal.  g = 1 is accepted with a warning (the
    count degenerates to 0); g below 1 is rejected.
    """
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if d < 1:
        raise DegreeZero(f"local degree d = {d} must be >= 1")
    if g < 1:
        raise DegreeZero(f"genus g = {g} must be >= 1")
    degenerate = g < 2
    if degenerate:
        warnings.warn(f"mass formula evaluated at degenerate genus g = {g}", stacklevel=2)
    mass = (p**d - 1) * (g - 1)
    cycle = Fraction(1, 2) * (1 - p**d) * (2 - 2 * g)
    assert cycle.denominator == 1
    cycle_int = int(cycle)
    assert cycle_int == mass, "the two displayed forms of the mass formula disagree"
    return MassResult(mass, cycle_int, degenerate)


def mass_formula_for(datum: PelDatum) -> MassResult:
    return mass_formula(datum.p, datum.d, datum.g)


def cartier_label(datum: PelDatum, e: Embedding) -> Embedding:
    """Frobenius pull-back twists the character by sigma; pure relabeling."""
    return e.sigma(datum)


@dataclass(frozen=True)
class PullbackChain:
    steps: int
    terminal: Embedding


def pullback_chain(datum: PelDatum, e: Embedding) -> PullbackChain:
    """Iterated pull-back of a non-uniformizing distinguished-orbit summand.

    From position i-1 (2 <= i <= d) the chain reaches the opposite
    uniformizing label in d-i+1 steps; starred and barred runs mirror.
    """
    d = datum.d
    if e.orbit != 1 or d < 2 or e.pos % d == 0:
        raise NotInDistinguishedOrbit(
            f"{e.label()} is not a non-uniformizing label of the distinguished orbit"
        )
    steps = d - (e.pos % d)
    terminal = e.sigma_pow(datum, steps)
    assert terminal.is_uniformizing(datum)
    return PullbackChain(steps, terminal)
