"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RicciPosetError(ValueError):
    """Base class for all domain errors raised by this package."""


class DuplicateElement(RicciPosetError):
    pass


class UnknownIdentifier(RicciPosetError):
    pass


class SelfCover(RicciPosetError):
    pass


class CycleDetected(RicciPosetError):
    pass


class NotACover(RicciPosetError):
    """A cover pair is implied by a longer path, so the input is not a Hasse diagram."""


class NotRanked(RicciPosetError):
    """No rank function exists. ``witness`` names an element with conflicting ranks."""

    def __init__(self, message: str, witness: str | None = None):
        super().__init__(message)
        self.witness = witness


class NotComparable(RicciPosetError):
    pass


class WrongRank(RicciPosetError):
    pass


class EmptyLevel(RicciPosetError):
    pass


class InvalidComplex(RicciPosetError):
    pass


class InvalidMap(RicciPosetError):
    pass


class ParameterOutOfRange(RicciPosetError):
    pass


class NotAlmostPolyhedral(RicciPosetError):
    def __init__(self, message: str, witnesses: list | None = None):
        super().__init__(message)
        self.witnesses = witnesses or []
