"""Exception hierarchy shared across the library and the CLI."""

from __future__ import annotations


class MFKitError(Exception):
    """Base class for all library errors."""


class ParseError(MFKitError):
    """Malformed polynomial text or JSON payload."""


class ValidationError(MFKitError):
    """Structural data that fails its invariants (grading, shapes, identities)."""


class InputError(MFKitError):
    """Semantically invalid input to an operation (wrong module, bad point, ...)."""
