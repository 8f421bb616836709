"""Exception taxonomy shared across the package."""


class CayleyChiError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(CayleyChiError):
    """A matrix or vector has the wrong dimensions for the operation."""


class UnsupportedShapeError(CayleyChiError):
    """The classifier has no decision procedure for this matrix shape."""


class PreconditionError(CayleyChiError):
    """A named precondition of a decision procedure failed.

    ``check`` identifies which one: "shape", "rank", "zero_row",
    "zero_column", "loops" or "bipartite".
    """

    def __init__(self, check: str, message: str):
        super().__init__(message)
        self.check = check


class NotCanonicalizableError(CayleyChiError):
    """The bounded canonical-form search exhausted all branches."""


class NoProperColoringError(CayleyChiError):
    """The graph has a self-loop, so no proper coloring exists."""


class SizeCapError(CayleyChiError):
    """A constructed graph would exceed the configured vertex cap."""


class SearchBudgetError(CayleyChiError):
    """The exact coloring search exceeded its node budget."""


class MatrixParseError(CayleyChiError):
    """Matrix or vector input text could not be parsed."""


class VectorError(CayleyChiError):
    """Invalid plane-vector input (mixed fields, non-unit norm, bad count)."""


class InternalViolationError(CayleyChiError):
    """Two routes that must agree disagreed; indicates a bug, never user error."""
