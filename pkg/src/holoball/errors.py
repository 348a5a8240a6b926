"""Exception taxonomy shared across the package."""

from __future__ import annotations

__all__ = [
    "InputError",
    "SchemaError",
    "DomainError",
    "PreconditionError",
    "CertificationError",
    "NumericalError",
]


class InputError(ValueError):
    """Invalid argument: dimension mismatch, out-of-range value, bad config."""


class SchemaError(InputError):
    """Malformed map document. ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"


class DomainError(InputError):
    """Evaluation requested at a point outside a map's domain (e.g. at a pole)."""


class PreconditionError(InputError):
    """A mathematical hypothesis required by the operation does not hold."""


class CertificationError(ValueError):
    """A map that must send the ball into the ball demonstrably fails to."""


class NumericalError(RuntimeError):
    """An iterative routine failed to converge. Carries the best iterate seen."""

    def __init__(self, message: str, value: float | None = None, witness=None):
        super().__init__(message)
        self.value = value
        self.witness = witness
