from __future__ import annotations
from dataclasses import dataclass
from typing import Any


@dataclass
class CheckResult:
    """Outcome of a mathematical check.

    A failing property is reported here, never raised. ``witness`` names the basis
    tuple, section or index pair that broke the property; ``value`` is the offending
    residual when one is meaningful.
    """

    passed: bool
    witness: Any = None
    value: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, detail: str = "", value: Any = None) -> CheckResult:
        return cls(True, None, value, detail)

    @classmethod
    def fail(cls, witness: Any, value: Any = None, detail: str = "") -> CheckResult:
        return cls(False, witness, value, detail)
