"""Exception types shared across the package."""

from __future__ import annotations


class CapExceededError(ValueError):
    """A configured size or effort cap would be exceeded."""


class SingularMatrixError(ValueError):
    """The matrix has no inverse over GF(2)."""


class NotPrimitiveError(ValueError):
    """A primitive polynomial was required."""
