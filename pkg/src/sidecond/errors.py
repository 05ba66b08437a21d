"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class SideCondError(Exception):
    """Base class.  ``code`` is a stable machine-readable name."""

    code = "Error"

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.code)
        self.detail = detail


class NoComparisonPoint(SideCondError):
    code = "NoComparisonPoint"


class NoRepresentation(SideCondError):
    code = "NoRepresentation"


class NotClosed(SideCondError):
    code = "NotClosed"


class UnknownId(SideCondError):
    code = "UnknownId"


class DomainClash(SideCondError):
    code = "DomainClash"


class NotInModel(SideCondError):
    code = "NotInModel"


class NotInDClass(SideCondError):
    code = "NotInDClass"


class PreconditionFailed(SideCondError):
    code = "PreconditionFailed"


class AmbiguousCase(SideCondError):
    code = "AmbiguousCase"


class CoordinateMissing(SideCondError):
    code = "CoordinateMissing"


class GenerationExhausted(SideCondError):
    code = "GenerationExhausted"


class UnknownProperty(SideCondError):
    code = "UnknownProperty"


class BudgetExceeded(SideCondError):
    code = "BudgetExceeded"


class DocumentError(SideCondError):
    """Malformed input document; carries a field path for the message."""

    code = "DocumentError"


class VacuousRun(SideCondError):
    """A property run whose premise held too rarely to count as a pass."""

    code = "VacuousRun"
