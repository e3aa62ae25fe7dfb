"""Shared exception types.

InputError covers anything a caller got wrong (bad files, bad vertex ids,
violated operation preconditions); InternalError flags a broken invariant
inside the solver itself and should never escape on valid inputs.
"""


class InputError(ValueError):
    pass


class ParseError(InputError):
    """Malformed graph or certificate file. Carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InternalError(RuntimeError):
    pass


class CapExceededError(InputError):
    """Raised when a brute-force routine is asked to exceed its size cap."""
