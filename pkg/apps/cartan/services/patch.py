# FILE: apps/cartan/services/patch.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Sequence, Union

from sympy.polys.rings import PolyRing

from apps.core.exceptions import CourantError, PatchMismatchError
from apps.scalars.services.polynomials import (
    Polynomial, parse_polynomial, polynomial_ring, to_exact,
)


@dataclass(frozen=True)
class Patch:
    """A single coordinate chart with polynomial functions in the named variables."""

    names: tuple[str, ...]
    ring: PolyRing = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise CourantError(f"repeated coordinate names in {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "ring", polynomial_ring(names))

    @classmethod
    def euclidean(cls, n: int, prefix: str = "x") -> Patch:
        """x, y, z for n <= 3, else x1..xn."""
        if n <= 3 and prefix == "x":
            return cls(("x", "y", "z")[:n])
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def dimension(self) -> int:
        return len(self.names)

    @property
    def coordinates(self) -> tuple[Polynomial, ...]:
        return self.ring.gens

    @property
    def zero(self) -> Polynomial:
        return self.ring.zero

    @property
    def one(self) -> Polynomial:
        return self.ring.one

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise CourantError(f"unknown coordinate '{name}'. Available: {list(self.names)}") from None

    def poly(self, value: Union[str, int, Polynomial]) -> Polynomial:
        """Coerce text, integers, rationals and ring elements into this patch's ring."""
        if isinstance(value, (str, int)) and not isinstance(value, bool):
            return parse_polynomial(value, self.ring) if isinstance(value, str) else self.ring(value)
        if self.ring.is_element(value):
            return value
        if hasattr(value, "ring"):
            raise PatchMismatchError(f"polynomial {value} lives on another patch")
        return self.ring(to_exact(value))

    def check_same(self, *others: Patch) -> None:
        for other in others:
            if other != self:
                raise PatchMismatchError(f"patch mismatch: {self.names} vs {other.names}")


def same_patch(objs: Sequence) -> Patch:
    patch = objs[0].patch
    patch.check_same(*(o.patch for o in objs[1:]))
    return patch
