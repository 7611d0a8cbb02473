"""Exception hierarchy.

Every failure the library can signal derives from :class:`FcyError` so callers
(and the CLI) can sort them into "bad input" and "budget exhausted" buckets.
"""


class FcyError(Exception):
    """Base class."""


class MalformedInput(FcyError):
    """Input that cannot be interpreted at all."""


class DimensionMismatch(FcyError, ValueError):
    pass


class NonSquareMatrix(FcyError, ValueError):
    pass


class ZeroDivisionInField(FcyError, ZeroDivisionError):
    pass


class UnknownVertex(MalformedInput):
    pass


class NonParallelRelation(MalformedInput):
    pass


class GradingRankMismatch(MalformedInput):
    pass


class NonAdmissibleRelation(MalformedInput):
    pass


class CycleNotClosed(MalformedInput):
    pass


class CutNotConsistent(MalformedInput):
    pass


class InvalidDynkin(MalformedInput):
    pass


class InvalidParameters(MalformedInput):
    pass


class NotHomogeneous(FcyError):
    """A graded operation was requested on an ungraded presentation."""


class NonHomogeneousSocle(FcyError):
    pass


class NotFrobenius(FcyError):
    """The algebra is not self-injective; ``reason`` names the projective."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class InternalNondegeneracyFailure(FcyError):
    pass


class InvariantViolation(FcyError):
    pass


class NotConnected(FcyError):
    pass


class NoOrderFound(FcyError):
    pass


class WindowTooSmall(FcyError):
    pass


class DimensionBoundExceeded(FcyError):
    pass


# exceptions that mean "the computation ran out of room", CLI exit code 2
BUDGET_ERRORS = (DimensionBoundExceeded, NoOrderFound, WindowTooSmall)
