"""Typed errors shared across the package.

Every domain error carries a stable machine-readable name (``.name``) so the
CLI can surface it without string matching on messages.
"""

from __future__ import annotations


class PelCrystalError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__


class NotPrime(PelCrystalError):
    pass


class DegreeZero(PelCrystalError):
    pass


class NotAUnit(PelCrystalError):
    pass


class DimensionMismatch(PelCrystalError):
    pass


class InsufficientPrecision(PelCrystalError):
    pass


class SlopeBoundExceeded(PelCrystalError):
    pass


class SlopeOutOfRange(PelCrystalError):
    pass


class NotInDistinguishedOrbit(PelCrystalError):
    pass


class SandwichFails(PelCrystalError):
    pass


class SummandNotRankOne(PelCrystalError):
    pass


class IdenticallyZeroToTruncation(PelCrystalError):
    pass


class NonUnitWhereUnitRequired(PelCrystalError):
    pass


class SingularCurve(PelCrystalError):
    pass


class MethodDisagreement(PelCrystalError):
    pass


class MassMismatch(PelCrystalError):
    pass


class NonLinearResult(PelCrystalError):
    pass


class PCurvatureNonzero(PelCrystalError):
    pass


class InsufficientTruncation(PelCrystalError):
    pass


class UsageError(PelCrystalError):
    pass
