"""Exception hierarchy for hopfkit.

Verifiers report negative verdicts through their result objects; these
exceptions are reserved for inputs an operation cannot work with.
"""


class HopfkitError(Exception):
    """Base class for every error raised by hopfkit."""


class InputError(HopfkitError):
    """Malformed data: bad files, shape mismatches, unknown names."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class DomainError(HopfkitError):
    """A mathematical precondition of the requested operation does not hold."""


class UnsupportedOperationError(HopfkitError):
    """Valid input that the engine does not handle (e.g. positive characteristic)."""


class TheoremViolation(HopfkitError):
    """A certificate guaranteed by theory could not be built.

    This always points at invalid input data, never at a counterexample.
    """


class InternalError(HopfkitError):
    """Engine self-consistency check failed."""
