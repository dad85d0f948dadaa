"""Exceptions raised when a mathematical claim cannot be certified."""

from __future__ import annotations

from typing import Any


class StemToolkitError(Exception):
    """Base class for every toolkit failure that is not a plain bad argument."""


class FixtureError(StemToolkitError):
    """A fixture file is missing, malformed, or disagrees with itself."""


class NonexistenceError(StemToolkitError):
    def __init__(self, n: int, reason: str) -> None:
        super().__init__(f"no n-uniform square-free cyclic shift morphism for n={n}: {reason}")
        self.n = n
        self.reason = reason


class VerificationError(StemToolkitError):
    """A check that the construction chain guarantees did not hold."""

    def __init__(self, message: str, context: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.context = context or {}


class ConstructionError(VerificationError):
    def __init__(self, message: str, recipe: Any) -> None:
        super().__init__(message, {"recipe": recipe})
        self.recipe = recipe


class StreamVerificationError(VerificationError):
    def __init__(self, message: str, position: int, window: str) -> None:
        super().__init__(message, {"position": position, "window": window})
        self.position = position
        self.window = window
