"""Exception types shared across the package."""


class VeroneseKitError(Exception):
    """Base class for all package errors."""


class ShapeError(VeroneseKitError):
    """Matrix or index data with the wrong dimensions."""


class FieldMismatchError(VeroneseKitError):
    """Operands attached to different coefficient fields."""


class IndexSetError(VeroneseKitError):
    """Index set not of the form required (1-based, strictly increasing, in range)."""


class DegenerateInputError(VeroneseKitError):
    """Input violates a nondegeneracy precondition (zero column, dependent points, ...)."""


class RankDeficiencyError(VeroneseKitError):
    """Matrix does not have the full rank required by the operation."""


class NotAGalePairError(VeroneseKitError):
    """The two matrices are not orthogonal complements of each other."""


class BudgetExceededError(VeroneseKitError):
    """A bounded search or resampling loop ran out of budget."""


class SpanFailureError(BudgetExceededError):
    """Sampler could not produce a spanning configuration within its retry budget."""
