"""Slope and Harder-Narasimhan calculus for Frobenius pull-backs.

This module manipulates slope data (rank, degree, genus, label), not sheaves:
the verdicts encode the instability bound nu <= (r-1)(2g-2), its saturation on
the distinguished-orbit summands, and the strong-semistability classification
as exact rules over those numbers.  Every verdict records the standing
hypothesis p >= 2g under which the semistability inputs hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import DegreeZero, NotInDistinguishedOrbit, SandwichFails
from .pel import (
    UNIFORMIZING,
    UNITARY,
    Embedding,
    PelDatum,
    build_embeddings,
)

HIGGS_SEMISTABLE_MAXIMAL_HIGGS = "HIGGS_SEMISTABLE_MAXIMAL_HIGGS"
STRONGLY_SEMISTABLE_ETALE_TRIVIALIZABLE = "STRONGLY_SEMISTABLE_ETALE_TRIVIALIZABLE"
STABLE_NOT_STRONGLY_SEMISTABLE = "STABLE_NOT_STRONGLY_SEMISTABLE"


@dataclass(frozen=True)
class BundleSlopeData:
    rank: int
    degree: int
    genus: int
    label: Optional[Embedding] = None

    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)


@dataclass(frozen=True)
class HNProfile:
    """Graded pieces (rank_j, degree_j) with strictly decreasing slopes."""

    pieces: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(tuple(p) for p in self.pieces))
        if not self.pieces:
            raise DegreeZero("empty Harder-Narasimhan profile")
        if any(r < 1 for r, _ in self.pieces):
            raise DegreeZero("profile ranks must be positive")
        slopes = [Fraction(d, r) for r, d in self.pieces]
        if any(a <= b for a, b in zip(slopes, slopes[1:])):
            raise DegreeZero("profile slopes must strictly decrease")

    def rank(self) -> int:
        return sum(r for r, _ in self.pieces)

    def degree(self) -> int:
        return sum(d for _, d in self.pieces)

    def mu_max(self) -> Fraction:
        r, d = self.pieces[0]
        return Fraction(d, r)

    def mu_min(self) -> Fraction:
        r, d = self.pieces[-1]
        return Fraction(d, r)

    def to_json(self) -> List[List[int]]:
        return [[r, d] for r, d in self.pieces]


def nu(profile: HNProfile) -> Fraction:
    """mu_max - mu_min; zero exactly for a single graded piece."""
    return profile.mu_max() - profile.mu_min()


def bound_check(r: int, g: int, value) -> bool:
    """Instability bound: value <= (r-1)(2g-2)."""
    if r < 1 or g < 0:
        raise DegreeZero("rank must be >= 1 and genus >= 0")
    return Fraction(value) <= (r - 1) * (2 * g - 2)


def frobenius_degree(p: int, b: BundleSlopeData) -> BundleSlopeData:
    """Frobenius pull-back multiplies the degree by p and keeps the rank."""
    return BundleSlopeData(b.rank, p * b.degree, b.genus, b.label)


@dataclass(frozen=True)
class SandwichCertificate:
    profile: HNProfile
    mu_sub: Fraction
    mu_quot: Fraction
    nu_value: Fraction
    bound: Fraction
    all_equal: bool


def instability_sandwich(g: int, quotient_degree_bound: int) -> SandwichCertificate:
    """Force the profile of a rank-2 degree-0 pull-back squeezed by the bound.

    A surjection onto a line bundle of degree <= 1-g pins mu(sub) - mu(quot)
    >= 2g-2 from below while the instability bound pins nu <= 2g-2 from
    above, so every inequality collapses to equality and the profile is
    [(1, g-1), (1, 1-g)].
    """
    if g < 2:
        raise DegreeZero(f"genus g = {g} must be >= 2")
    if quotient_degree_bound > 1 - g:
        raise SandwichFails(
            f"quotient degree bound {quotient_degree_bound} exceeds 1 - g = {1 - g}; "
            "the inequality chain does not close"
        )
    profile = HNProfile(((1, g - 1), (1, 1 - g)))
    nu_value = nu(profile)
    bound = Fraction((2 - 1) * (2 * g - 2))
    cert = SandwichCertificate(
        profile=profile,
        mu_sub=Fraction(g - 1),
        mu_quot=Fraction(1 - g),
        nu_value=nu_value,
        bound=bound,
        all_equal=(nu_value == bound == Fraction(g - 1) - Fraction(1 - g)),
    )
    assert cert.all_equal
    return cert


@dataclass(frozen=True)
class SummandVerdict:
    embedding: Embedding
    higgs_type: str
    verdict: str
    nu_history: Tuple[int, ...]
    first_instability_step: Optional[int]
    bound_saturated: Optional[bool]
    assumes_p_geq_2g: bool = True

    def to_json(self) -> dict:
        d = self.embedding.to_json()
        d.update(
            higgs_type=self.higgs_type,
            verdict=self.verdict,
            nu_history=list(self.nu_history),
            first_instability_step=self.first_instability_step,
            bound_saturated=self.bound_saturated,
            assumes_p_geq_2g=self.assumes_p_geq_2g,
        )
        return d


def classify_summands(datum: PelDatum) -> List[SummandVerdict]:
    """Stability verdict for every summand label.

    Uniformizing labels: Higgs semistable with maximal Higgs field.  Unitary
    labels outside the distinguished orbit: strongly semistable, etale
    trivializable.  Unitary labels inside it (d >= 2, position i with
    2 <= i <= d, mirrored through star and bar): nu vanishes for the first
    d-i pull-backs and jumps to 2g-2 at step d-i+1, saturating the bound, so
    the bundle is stable but not strongly semistable.
    """
    g, d = datum.g, datum.d
    out = []
    for e in build_embeddings(datum):
        if e.is_uniformizing(datum):
            out.append(
                SummandVerdict(e, UNIFORMIZING, HIGGS_SEMISTABLE_MAXIMAL_HIGGS, (), None, None)
            )
        elif e.orbit != 1:
            out.append(
                SummandVerdict(
                    e, UNITARY, STRONGLY_SEMISTABLE_ETALE_TRIVIALIZABLE, (), None, None
                )
            )
        else:
            i = (e.pos % d) + 1  # 2 <= i <= d
            step = d - i + 1
            history = (0,) * (d - i) + (2 * g - 2,)
            saturated = bound_check(2, g, history[-1]) and history[-1] == (2 - 1) * (2 * g - 2)
            out.append(
                SummandVerdict(
                    e, UNITARY, STABLE_NOT_STRONGLY_SEMISTABLE, history, step, saturated
                )
            )
    return out


@dataclass(frozen=True)
class HNHodgeComparison:
    hn: HNProfile
    hodge: Tuple[int, int]
    equal: bool
    max_sub_degree_bound: int
    hodge_attains_bound: bool


def hn_equals_hodge(datum: PelDatum, e: Embedding) -> HNHodgeComparison:
    """HN filtration of the terminal pull-back against the Hodge filtration.

    Valid for distinguished-orbit unitary labels (position i, 2 <= i <= d).
    The instability bound caps sub-line-bundle degrees at g-1 and the Hodge
    piece attains the cap, so the two filtrations agree with profile
    [(1, g-1), (1, 1-g)].
    """
    d, g = datum.d, datum.g
    if e.orbit != 1 or d < 2 or e.pos % d == 0:
        raise NotInDistinguishedOrbit(
            f"{e.label()} does not index a non-uniformizing distinguished-orbit summand"
        )
    profile = HNProfile(((1, g - 1), (1, 1 - g)))
    hodge = (g - 1, 1 - g)
    # nu <= (2-1)(2g-2) caps the maximal sub-line degree of a degree-0 rank-2
    # bundle at g-1; the Hodge sub-line has exactly that degree.
    cap = g - 1
    return HNHodgeComparison(
        hn=profile,
        hodge=hodge,
        equal=(profile.pieces == ((1, hodge[0]), (1, hodge[1]))),
        max_sub_degree_bound=cap,
        hodge_attains_bound=(hodge[0] == cap),
    )


def strict_ss_rank2_is_strong(degree: int, rank: int = 2) -> bool:
    """Strictly semistable rank-2 of degree zero is strongly semistable."""
    if rank != 2:
        raise DegreeZero("classification rule applies to rank 2 only")
    return degree == 0
