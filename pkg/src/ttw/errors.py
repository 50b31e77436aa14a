"""Exception hierarchy shared by all ttw modules."""

from __future__ import annotations


class TtwError(Exception):
    """Base class for all errors raised by this package."""


class MalformedTableError(TtwError):
    """A table is structurally broken: missing entry, index out of range,
    wrong arity.  Distinct from a law violation, which is reported by
    ``validate`` rather than raised."""


class BuildError(TtwError):
    """A constructor produced tables that fail the category or algebra laws.

    Carries the offending validation report so callers can show witnesses.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CapExceededError(TtwError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, cap_name, limit, actual):
        super().__init__(f"cap {cap_name} exceeded: {actual} > {limit}")
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual


class ConsistencyError(TtwError):
    """Two independently computed routes to the same fact disagree.

    This signals a broken input category (or a bug), never a negative
    mathematical result; witnesses are carried in ``details``.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details


class NonCommutingSquareError(TtwError):
    """A square handed to a pullback/pushout check does not commute.

    Kept distinct from a ``False`` verdict: the universal property was
    never evaluated.
    """


class UnknownNameError(TtwError):
    """A subunit, morphism or object name does not resolve."""
