"""Exception taxonomy shared by every module in the package."""


class ValidationError(ValueError):
    """An input violates a structural requirement (bad table, bad shape, ...)."""


class ShapeError(ValidationError):
    """Matrix or vector dimensions do not conform."""


class PreconditionError(ValidationError):
    """An operation was invoked outside its stated preconditions."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class OracleUnavailableError(RuntimeError):
    """A brute-force oracle refused to run because the instance is too large."""


class InternalInvariantError(AssertionError):
    """A quantity guaranteed by construction failed to hold; signals a bug
    in the caller (violated hypothesis) or in this package."""
