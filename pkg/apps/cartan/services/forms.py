# FILE: apps/cartan/services/forms.py
from __future__ import annotations
from dataclasses import dataclass

from apps.cartan.services.alternating import Alternating, Index
from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.patch import Patch
from apps.core.exceptions import DegreeError
from apps.scalars.services.polynomials import Polynomial, poly_partial


@dataclass(frozen=True, eq=False)
class PolyForm(Alternating):
    """Differential form sum_I c_I dx^I with polynomial coefficients."""

    @classmethod
    def differential(cls, patch: Patch, f) -> PolyForm:
        return exterior_derivative(cls.scalar(patch, f))

    def function(self) -> Polynomial:
        if self.degree != 0 and not self.is_zero():
            raise DegreeError(f"expected a 0-form, got degree {self.degree}")
        return self.coeffs.get((), self.patch.zero)

    def __call__(self, *fields: PolyVectorField) -> Polynomial:
        """alpha(X_1, ..., X_k)."""
        if len(fields) != self.degree:
            raise DegreeError(f"{self.degree}-form evaluated on {len(fields)} vector fields")
        for X in fields:
            self.patch.check_same(X.patch)
        return self.evaluate_slots(X.components for X in fields)

    def __str__(self) -> str:
        return self._str_terms("d")


# -----------------
# Operations
# -----------------
def wedge(alpha: PolyForm, beta: PolyForm) -> PolyForm:
    return alpha.wedge(beta)


def exterior_derivative(alpha: PolyForm) -> PolyForm:
    patch = alpha.patch
    if alpha.degree == patch.dimension:
        return PolyForm.zero(patch, alpha.degree)
    out: dict[Index, Polynomial] = {}
    for idx, c in alpha.items():
        for i in range(patch.dimension):
            if i in idx:
                continue
            dc = poly_partial(c, i)
            if dc:
                out[(i,) + idx] = out.get((i,) + idx, patch.zero) + dc
    # unsorted keys are canonicalized (with sign) by the constructor
    return PolyForm(patch, alpha.degree + 1, out)


def interior_product(X: PolyVectorField, alpha: PolyForm) -> PolyForm:
    X.patch.check_same(alpha.patch)
    if alpha.degree == 0:
        raise DegreeError("interior product of a 0-form is undefined")
    return alpha.contract(X.components)


def lie_derivative(X: PolyVectorField, alpha: PolyForm) -> PolyForm:
    """L_X alpha = i_X d alpha + d i_X alpha."""
    X.patch.check_same(alpha.patch)
    d_alpha = exterior_derivative(alpha)
    first = interior_product(X, d_alpha) if d_alpha.degree > 0 else PolyForm.zero(alpha.patch, alpha.degree)
    if alpha.degree == 0:
        return first
    return first + exterior_derivative(interior_product(X, alpha))


def lie_derivative_transport(X: PolyVectorField, alpha: PolyForm) -> PolyForm:
    """Coordinate transport formula: L_X (c dx^I) = X(c) dx^I + c sum_b ... d(X^{i_b}) ...

    Independent of the Cartan formula; the two are compared in tests and by the runner.
    """
    X.patch.check_same(alpha.patch)
    patch = alpha.patch
    result = alpha.map_coefficients(X.apply)
    dX = [PolyForm.differential(patch, comp) for comp in X.components]
    for idx, c in alpha.items():
        for pos, i in enumerate(idx):
            term = PolyForm.scalar(patch, c)
            for other_pos, j in enumerate(idx):
                piece = dX[i] if other_pos == pos else PolyForm.basis(patch, j)
                term = term.wedge(piece)
            result = result + term
    return result
