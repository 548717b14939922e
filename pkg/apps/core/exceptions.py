from __future__ import annotations
from typing import Any, Optional


class CourantError(ValueError):
    """Base class for every precondition or validation failure raised by the apps."""


class PatchMismatchError(CourantError):
    pass


class DegreeError(CourantError):
    pass


class FrameError(CourantError):
    """Frame not invertible over polynomials, or eigenframes not transverse."""


class TypeMismatchError(CourantError):
    pass


class StructureError(CourantError):
    """Invalid algebraic data. ``witness`` carries the offending tuple when known."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ScenarioValidationError(CourantError):
    def __init__(self, message: str, field: str = "$", witness: Optional[Any] = None):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.witness = witness


class UnknownNameError(CourantError):
    def __init__(self, kind: str, name: str, available: list[str]):
        super().__init__(f"Unknown {kind} '{name}'. Available: {sorted(available)}")
        self.kind = kind
        self.name = name
