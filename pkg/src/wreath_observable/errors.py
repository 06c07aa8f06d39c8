"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates an operation's precondition."""


class GraphFormatError(ValueError):
    """Malformed graph file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size guard or budget."""


class TheoremViolationError(AssertionError):
    """A computed probability contradicts a proved bound.

    Raised as a bug trap: the bounds are theorems, so a breach means the
    simulator is wrong.
    """
