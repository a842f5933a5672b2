"""Shared exception types."""


class FlagsplitError(Exception):
    """Base class for all library errors."""


class InputError(FlagsplitError, ValueError):
    """Invalid user input (bad type/rank, weight outside a precondition, ...)."""


class ResourceLimitError(FlagsplitError, RuntimeError):
    """A configured cap (term count, dimension, enumeration size) was exceeded."""
