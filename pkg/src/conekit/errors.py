"""Exception types shared across the package."""


class ConekitError(Exception):
    """Base class for all conekit errors."""


class DimensionMismatchError(ConekitError, ValueError):
    """Operands live in different ambient dimensions."""


class InvariantViolationError(ConekitError, ValueError):
    """A constructor invariant does not hold for the given data."""


class PreconditionError(ConekitError, ValueError):
    """An operation precondition does not hold for the given arguments."""


class IndeterminateResultError(ConekitError, RuntimeError):
    """An iterative routine hit its iteration budget before reaching a
    conclusive answer.  Distinct from a negative verdict."""


class ParseError(ConekitError, ValueError):
    """A text fixture could not be parsed."""
