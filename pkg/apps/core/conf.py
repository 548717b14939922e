from __future__ import annotations
from pathlib import Path
from typing import Any, Optional

from django.conf import settings

from apps.core.exceptions import DegreeError


_DEFAULTS = {
    "SEED": 20240601,
    "DEGREE_BOUND": 2,
    "RANDOM_SECTIONS": 25,
    "SCHEMA_DIR": Path(__file__).resolve().parent.parent / "scenarios" / "schemas",
}


def get_setting(name: str) -> Any:
    """Read one entry of ``settings.COURANT`` (falls back to the built-in default)."""
    values = getattr(settings, "COURANT", {})
    if name in values:
        return values[name]
    return _DEFAULTS[name]


def resolve_seed(seed: Optional[int] = None) -> int:
    return int(get_setting("SEED") if seed is None else seed)


def resolve_degree(degree: Optional[int] = None) -> int:
    value = int(get_setting("DEGREE_BOUND") if degree is None else degree)
    if value < 0:
        raise DegreeError(f"degree bound must be non-negative, got {value}")
    return value
