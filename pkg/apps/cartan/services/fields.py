# FILE: apps/cartan/services/fields.py
from __future__ import annotations
from dataclasses import dataclass
from typing import Sequence, Union

from apps.cartan.services.patch import Patch
from apps.core.exceptions import CourantError
from apps.scalars.services.polynomials import Polynomial, poly_partial


@dataclass(frozen=True, eq=False)
class PolyVectorField:
    patch: Patch
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.patch.poly(c) for c in self.components)
        if len(comps) != self.patch.dimension:
            raise CourantError(
                f"vector field needs {self.patch.dimension} components, got {len(comps)}"
            )
        object.__setattr__(self, "components", comps)

    # -----------------
    # Constructors
    # -----------------
    @classmethod
    def zero(cls, patch: Patch) -> PolyVectorField:
        return cls(patch, (patch.zero,) * patch.dimension)

    @classmethod
    def coordinate(cls, patch: Patch, index: int) -> PolyVectorField:
        """The coordinate field d/dx^index."""
        comps = [patch.zero] * patch.dimension
        comps[index] = patch.one
        return cls(patch, tuple(comps))

    @classmethod
    def from_mapping(cls, patch: Patch, mapping: dict[str, Union[str, int]]) -> PolyVectorField:
        """{"x": "1", "z": "x"} -> d/dx + x d/dz."""
        comps = [patch.zero] * patch.dimension
        for name, coeff in mapping.items():
            comps[patch.index(name)] = patch.poly(coeff)
        return cls(patch, tuple(comps))

    # -----------------
    # Arithmetic
    # -----------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.patch == other.patch and self.components == other.components

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        self.patch.check_same(other.patch)
        return PolyVectorField(self.patch, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: PolyVectorField) -> PolyVectorField:
        self.patch.check_same(other.patch)
        return PolyVectorField(self.patch, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> PolyVectorField:
        return PolyVectorField(self.patch, tuple(-a for a in self.components))

    def scale(self, f) -> PolyVectorField:
        f = self.patch.poly(f)
        return PolyVectorField(self.patch, tuple(f * a for a in self.components))

    def __rmul__(self, f) -> PolyVectorField:
        return self.scale(f)

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    # -----------------
    # Calculus
    # -----------------
    def apply(self, f) -> Polynomial:
        """Directional derivative X(f)."""
        f = self.patch.poly(f)
        acc = self.patch.zero
        for i, c in enumerate(self.components):
            if c:
                acc = acc + c * poly_partial(f, i)
        return acc

    def __str__(self) -> str:
        terms = [
            f"({c})*d/d{name}" for c, name in zip(self.components, self.patch.names) if c
        ]
        return " + ".join(terms) or "0"


def lie_bracket_vf(X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    """[X, Y]^j = X(Y^j) - Y(X^j)."""
    X.patch.check_same(Y.patch)
    return PolyVectorField(
        X.patch,
        tuple(X.apply(yj) - Y.apply(xj) for xj, yj in zip(X.components, Y.components)),
    )


def frame_matrix(fields: Sequence[PolyVectorField]) -> list[list[Polynomial]]:
    return [list(f.components) for f in fields]
