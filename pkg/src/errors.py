class KleshchevError(Exception):
    """Base class for every error raised by the toolkit."""


class ParameterError(KleshchevError, ValueError):
    """Bad environment, shape mismatch, or an argument outside its documented range."""


class DomainError(KleshchevError, ValueError):
    """The input is well-formed but outside the domain of the operation (e.g. not Kleshchev)."""


class InvariantViolation(KleshchevError, RuntimeError):
    """A guaranteed mathematical property failed. Always an implementation bug."""
