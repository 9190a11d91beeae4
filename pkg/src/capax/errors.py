"""Semantic exception hierarchy.

Exit-code mapping used by the CLI: contract violations -> 2, numeric
failures -> 3, verification failures -> 4.
"""


class CapaxError(Exception):
    """Base class for all library errors."""


class ContractError(CapaxError, ValueError):
    """Inputs violate an operation's precondition (range, type, budget)."""


class MalformedRegionError(CapaxError, ValueError):
    """A moment region violates its structural invariants."""


class UnsupportedKindError(CapaxError, TypeError):
    """Operation not defined for this region kind."""


class ConcavityViolationError(CapaxError, ValueError):
    """Region is not concave toric; carries a witness point."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NumericFailureError(CapaxError, ArithmeticError):
    """A numeric routine missed its accuracy target; carries the estimate."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class IterationLimitError(NumericFailureError):
    """Iterative solver stopped before reaching its tolerance."""


class InfeasibilityError(CapaxError, ValueError):
    """Polytope empty or unbounded where a bounded body is required."""


class CertificateInvalidError(CapaxError, AssertionError):
    """A machine-checked certificate failed verification."""
