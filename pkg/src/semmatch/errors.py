"""Shared exception base for the semmatch package."""


class SemMatchError(Exception):
    """Base class for all errors raised by this package."""
