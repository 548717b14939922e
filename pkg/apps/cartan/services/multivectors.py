# FILE: apps/cartan/services/multivectors.py
from __future__ import annotations
from dataclasses import dataclass

from apps.cartan.services.alternating import Alternating, Index
from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm
from apps.core.exceptions import DegreeError
from apps.scalars.services.linalg import rank
from apps.scalars.services.polynomials import Polynomial


@dataclass(frozen=True, eq=False)
class PolyMultivector(Alternating):
    """Multivector field sum_I c_I d/dx^I with polynomial coefficients."""

    @classmethod
    def from_vector_field(cls, X: PolyVectorField) -> PolyMultivector:
        return cls(X.patch, 1, {(i,): c for i, c in enumerate(X.components) if c})

    def to_vector_field(self) -> PolyVectorField:
        if self.degree != 1 and not self.is_zero():
            raise DegreeError(f"expected a vector field, got degree {self.degree}")
        return PolyVectorField(
            self.patch, tuple(self.component(i) for i in range(self.patch.dimension))
        )

    def contract_form(self, mu: PolyForm) -> PolyMultivector:
        """iota_mu on the first slot."""
        self.patch.check_same(mu.patch)
        if mu.degree != 1:
            raise DegreeError("multivectors are contracted by 1-forms")
        return self.contract([mu.component(i) for i in range(self.patch.dimension)])

    def __call__(self, *forms: PolyForm) -> Polynomial:
        if len(forms) != self.degree:
            raise DegreeError(f"{self.degree}-vector evaluated on {len(forms)} 1-forms")
        return self.evaluate_slots(
            [mu.component(i) for i in range(self.patch.dimension)] for mu in forms
        )

    def __str__(self) -> str:
        return self._str_terms("d/d")


# -----------------
# Schouten bracket
# -----------------
def _right_derivative(P: PolyMultivector, i: int) -> PolyMultivector:
    """Right derivative with respect to the odd generator d/dx^i."""
    p = P.degree
    out: dict[Index, Polynomial] = {}
    for idx, c in P.items():
        if i not in idx:
            continue
        pos = idx.index(i)
        rest = idx[:pos] + idx[pos + 1:]
        out[rest] = c if (p - 1 - pos) % 2 == 0 else -c
    return PolyMultivector(P.patch, p - 1, out)


def schouten_bracket(P: PolyMultivector, Q: PolyMultivector) -> PolyMultivector:
    """[P, Q] = (-1)^(p-1) sum_i (P <-d/dzeta_i) ^ dQ/dx^i - (-1)^((p-1)(q-1)) (Q <-d/dzeta_i) ^ dP/dx^i.

    Degree p + q - 1. Normalized so that [pi, pi](df, dg, dh) = 2({{f,g},h} + c.p.)
    for a bivector pi. Restricts to the Lie bracket on vector fields and to X(f) on a
    vector field and a function. Graded symmetry reads [Q, P] = (-1)^(pq) [P, Q] and the
    graded Leibniz rule [P, Q ^ R] = [P, Q] ^ R + (-1)^((p-1)q) Q ^ [P, R].
    """
    P.patch.check_same(Q.patch)
    p, q = P.degree, Q.degree
    patch = P.patch
    degree = p + q - 1
    if degree < 0:
        return PolyMultivector.zero(patch, 0)
    result = PolyMultivector.zero(patch, min(degree, patch.dimension))
    if degree > patch.dimension:
        return result
    sign = -1 if ((p - 1) * (q - 1)) % 2 == 0 else 1
    for i in range(patch.dimension):
        if p > 0:
            result = result + _right_derivative(P, i).wedge(Q.partial(i))
        if q > 0:
            result = result + sign * _right_derivative(Q, i).wedge(P.partial(i))
    return result if p % 2 else -result


# -----------------
# Bivectors
# -----------------
def sharp(pi: PolyMultivector, mu: PolyForm) -> PolyVectorField:
    """pi#(mu) = iota_mu pi."""
    if pi.degree != 2:
        raise DegreeError("sharp map needs a bivector")
    return pi.contract_form(mu).to_vector_field()


def bivector_matrix(pi: PolyMultivector) -> list[list[Polynomial]]:
    n = pi.patch.dimension
    return [[pi.component(i, j) for j in range(n)] for i in range(n)]


def sharp_rank(pi: PolyMultivector) -> int:
    """Generic rank of pi# over the fraction field of the patch ring."""
    return rank(bivector_matrix(pi), pi.patch.ring.to_domain())


def poisson_bracket(pi: PolyMultivector, f, g) -> Polynomial:
    """{f, g} = pi(df, dg)."""
    patch = pi.patch
    return pi(PolyForm.differential(patch, f), PolyForm.differential(patch, g))


def poisson_jacobiator(pi: PolyMultivector, f, g, h) -> Polynomial:
    """{{f,g},h} + {{g,h},f} + {{h,f},g}."""
    br = lambda a, b: poisson_bracket(pi, a, b)
    return br(br(f, g), h) + br(br(g, h), f) + br(br(h, f), g)
