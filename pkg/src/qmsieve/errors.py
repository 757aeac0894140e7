"""Exception types shared across the package."""
from __future__ import annotations


class QmSieveError(Exception):
    """Base class for library errors."""


class InvalidInputError(QmSieveError, ValueError):
    """Input violates a documented precondition."""


class ResourceBoundError(QmSieveError):
    """A configured cap was exceeded; the result would otherwise be incomplete."""

    def __init__(self, cap: str, detail: str = ""):
        self.cap = cap
        self.detail = detail
        super().__init__(f"resource bound exceeded ({cap}): {detail}" if detail else f"resource bound exceeded ({cap})")


class NotGaloisError(QmSieveError):
    """Automorphism search found fewer automorphisms than the degree."""
