"""Exception hierarchy. Every domain error derives from ``SurfNormError``."""


class SurfNormError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class SurfaceSyntaxError(SurfNormError):
    pass


class DuplicateLabelCount(SurfNormError):
    """An edge label does not occur exactly twice across the faces."""


class Disconnected(SurfNormError):
    pass


class NonPositiveWeight(SurfNormError):
    pass


class NotAClosedWalk(SurfNormError):
    pass


class NotACycle(SurfNormError):
    pass


class NotSimple(SurfNormError):
    pass


class NotOrientable(SurfNormError):
    pass


class BaseOrientable(SurfNormError):
    """An orientation cover was requested for an orientable surface."""


class CircuitBudgetExceeded(SurfNormError):
    pass


class DimensionTooLarge(SurfNormError):
    pass


class NotOnSphere(SurfNormError):
    pass


class InvalidPrescription(SurfNormError):
    pass


class NoSpanProgress(SurfNormError):
    """Outside-penalty escalation hit its cap without a certificate."""

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = history or []


class SearchBudgetExceeded(SurfNormError):
    pass


class ClassDimensionMismatch(SurfNormError):
    """A homology class vector has the wrong number of coordinates."""


class TrivialHomology(SurfNormError):
    """b1 = 0: there is no unit ball to build."""
