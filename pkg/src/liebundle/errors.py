"""Shared exception types."""

from __future__ import annotations


class InternalCheckError(RuntimeError):
    """Two independent computation routes disagreed: an implementation bug.

    Raised by the dual-route checks (validator cross-checks, spectrum
    flag/rank comparison, embedded-pattern assertions).  This is never a
    statement about the input; it means the library itself is inconsistent.
    """


class SizeCapError(ValueError):
    """A requested construction exceeds the configured size cap."""
