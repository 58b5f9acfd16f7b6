"""Exception types shared across the package."""


class GpcError(Exception):
    """Base class for all errors raised by this package."""


class UnknownVertexError(GpcError, KeyError):
    """A vertex was referenced that is not in the graph."""


class LoopedGraphError(GpcError, ValueError):
    """An operation that requires a loopless graph got a graph with a loop."""


class PreconditionError(GpcError, ValueError):
    """An argument violates a documented precondition."""


class SizeCapExceededError(GpcError, RuntimeError):
    """A construction would exceed the configured vertex cap."""


class SearchBudgetExceededError(GpcError, RuntimeError):
    """The solver ran out of its node budget before reaching a verdict.

    This is an explicit "unknown" outcome: it never stands in for a
    refutation, which is only reported after exhaustive search.
    """


class FormatError(GpcError, ValueError):
    """Malformed graph JSON input."""
