"""Exceptions shared across the package."""


class BoundExceededError(Exception):
    """Raised when a request would exceed a configured enumeration bound.

    Counts of subdivisions grow exponentially with edge count, so the
    enumeration entry points fail fast instead of exhausting memory.
    """
