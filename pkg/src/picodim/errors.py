"""Shared exception types with CLI exit codes attached."""


class MalformedInputError(ValueError):
    """Input data violates a shape or schema precondition."""

    exit_code = 2


class JacobiError(MalformedInputError):
    """Structure constants fail the Jacobi identity; carries the offending triple."""

    def __init__(self, triple, value):
        self.triple = triple
        self.value = value
        super().__init__(
            f"Jacobi identity fails on basis triple {triple}: residual {value}"
        )


class HypothesisFailure(Exception):
    """The algebra is not nilpotent-by-semisimple, so d(L) is undefined here."""

    exit_code = 3


class NotSemisimpleError(HypothesisFailure):
    """Killing form degenerate where a semisimple algebra was required."""


class NotSplitError(HypothesisFailure):
    """A simple component is not split over the rationals.

    Component dimensions can change under scalar extension, so we refuse
    to report a possibly-wrong exponent.
    """


class BudgetExceededError(Exception):
    """An exhaustive computation would exceed the configured budget."""

    exit_code = 4

    def __init__(self, message, required=None):
        self.required = required
        super().__init__(message)


class InternalInvariantError(AssertionError):
    """A mathematically guaranteed invariant failed; indicates a bug."""

    exit_code = 5
