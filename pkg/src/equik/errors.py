"""Exception types shared across the package."""


class EquikError(Exception):
    """Base class for package errors."""


class UsageError(EquikError):
    """Bad input: malformed JSON, inconsistent tables, wrong degrees."""


class ResourceLimitError(EquikError):
    """A configured ceiling (group order, matrix size) was exceeded."""


class NumericalError(EquikError):
    """A floating point computation failed its tolerance check."""


class VerificationError(EquikError):
    """A mathematical invariant that must hold was violated."""
