"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DemeritError(Exception):
    """Base class for all errors raised by this package."""


class UndefinedInputError(DemeritError, ValueError):
    """The requested quantity is undefined for this input (e.g. length zero)."""


class ResourceLimitError(DemeritError):
    """The computation exceeds a configured size guard."""


class UsageError(DemeritError, ValueError):
    """An argument is outside the accepted set of values."""


class PreconditionError(DemeritError, ValueError):
    """An input violates a documented precondition."""


class EncodingError(DemeritError, ValueError):
    """A partition cannot be written as a display matrix."""


class CacheCorruptionError(DemeritError):
    """A cache file failed its integrity check."""
