"""Shared exception types."""


class DtoricError(Exception):
    """Base class for all package errors."""


class ValidationError(DtoricError):
    """A presentation, complex, document or argument failed validation."""


class NormalityError(DtoricError):
    """An operation that needs normality was run without evidence for it."""


class WindowError(DtoricError):
    """A truncation window is too small to certify the requested check."""


class IncompatibleTupleError(DtoricError):
    """An operator tuple fails the compatibility conditions and has no lift."""
