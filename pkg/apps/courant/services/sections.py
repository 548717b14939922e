# FILE: apps/courant/services/sections.py
"""
Sections of the two Courant algebroid models.

``GeneralizedSection`` is X + xi in TM + T*M over a polynomial patch. ``ConstantSection``
is a constant element of a double A + A*, stored as its coordinate vector. Both expose
the same small interface (+, -, scale, is_zero, components) so that axiom and structure
checks can run against either model.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Sequence

from sympy import QQ

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.patch import Patch
from apps.core.exceptions import DegreeError
from apps.scalars.services.polynomials import Polynomial, to_exact


@dataclass(frozen=True, eq=False)
class GeneralizedSection:
    vf: PolyVectorField
    form: PolyForm

    def __post_init__(self):
        self.vf.patch.check_same(self.form.patch)
        if self.form.degree != 1 and not self.form.is_zero():
            raise DegreeError(f"the form part must be a 1-form, got degree {self.form.degree}")
        if self.form.degree != 1:
            object.__setattr__(self, "form", PolyForm.zero(self.vf.patch, 1))

    # -----------------
    # Constructors
    # -----------------
    @classmethod
    def zero(cls, patch: Patch) -> GeneralizedSection:
        return cls(PolyVectorField.zero(patch), PolyForm.zero(patch, 1))

    @classmethod
    def vector(cls, X: PolyVectorField) -> GeneralizedSection:
        return cls(X, PolyForm.zero(X.patch, 1))

    @classmethod
    def covector(cls, xi: PolyForm) -> GeneralizedSection:
        return cls(PolyVectorField.zero(xi.patch), xi)

    @classmethod
    def from_components(cls, patch: Patch, comps: Sequence[Polynomial]) -> GeneralizedSection:
        """Vector components first, then the dx^i coefficients."""
        n = patch.dimension
        X = PolyVectorField(patch, tuple(comps[:n]))
        xi = PolyForm(patch, 1, {(i,): c for i, c in enumerate(comps[n:]) if c})
        return cls(X, xi)

    @property
    def patch(self) -> Patch:
        return self.vf.patch

    def components(self) -> list[Polynomial]:
        n = self.patch.dimension
        return list(self.vf.components) + [self.form.component(i) for i in range(n)]

    # -----------------
    # Arithmetic
    # -----------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneralizedSection):
            return NotImplemented
        return self.vf == other.vf and self.form == other.form

    def __add__(self, other: GeneralizedSection) -> GeneralizedSection:
        return GeneralizedSection(self.vf + other.vf, self.form + other.form)

    def __sub__(self, other: GeneralizedSection) -> GeneralizedSection:
        return GeneralizedSection(self.vf - other.vf, self.form - other.form)

    def __neg__(self) -> GeneralizedSection:
        return GeneralizedSection(-self.vf, -self.form)

    def scale(self, f) -> GeneralizedSection:
        f = self.patch.poly(f)
        return GeneralizedSection(self.vf.scale(f), self.form.scale(f))

    def __rmul__(self, f) -> GeneralizedSection:
        return self.scale(f)

    def is_zero(self) -> bool:
        return self.vf.is_zero() and self.form.is_zero()

    def __str__(self) -> str:
        return f"{self.vf} (+) {self.form}"


@dataclass(frozen=True, eq=False)
class ConstantSection:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(to_exact(v) for v in self.values))

    @classmethod
    def zero(cls, rank: int) -> ConstantSection:
        return cls((QQ.zero,) * rank)

    @classmethod
    def unit(cls, rank: int, index: int) -> ConstantSection:
        return cls(tuple(QQ.one if i == index else QQ.zero for i in range(rank)))

    def components(self) -> list:
        return list(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstantSection):
            return NotImplemented
        return self.values == other.values

    def __add__(self, other: ConstantSection) -> ConstantSection:
        return ConstantSection(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: ConstantSection) -> ConstantSection:
        return ConstantSection(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> ConstantSection:
        return ConstantSection(tuple(-a for a in self.values))

    def scale(self, f) -> ConstantSection:
        f = to_exact(f)
        return ConstantSection(tuple(f * a for a in self.values))

    def __rmul__(self, f) -> ConstantSection:
        return self.scale(f)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True, eq=False)
class SectionFamily:
    """Generated test sections.

    ``frame`` holds the constant frame sections, ``scaled`` their multiples by the
    non-constant monomials up to the degree bound, ``random`` the seeded random
    sections. ``functions`` are the monomials used for Leibniz-type identities.
    """

    frame: tuple
    scaled: tuple
    random: tuple
    functions: tuple
    labels: dict = field(repr=False)
    degree: int = 0
    seed: int = 0

    def label(self, section: Any) -> str:
        return self.labels.get(id(section), str(section))

    def __len__(self) -> int:
        return len(self.frame) + len(self.scaled) + len(self.random)
