# FILE: apps/courant/services/models.py
"""
The two Courant algebroid models.

``CourantPatchModel`` is TM + T*M over a polynomial patch with pairing
<X + xi, Y + eta> = xi(Y) + eta(X) (no factor 1/2) and one of three bracket modes:

* standard:       [X, Y] + L_X eta - L_Y xi - 1/2 d(i_X eta - i_Y xi)
* twisted:        the standard bracket plus i_X i_Y H for a closed 3-form H
* broken-axiom5:  the standard bracket without the exact term (a negative control)

``ConstantCourantModel`` is the double k + k* of a Lie bialgebra at constant sections,
with the bracket induced from the two algebroid differentials.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from sympy import QQ

from apps.cartan.services.fields import PolyVectorField, lie_bracket_vf
from apps.cartan.services.forms import PolyForm, exterior_derivative, interior_product, lie_derivative
from apps.cartan.services.patch import Patch
from apps.cartan.services.sampling import make_rng, random_form, random_rational, random_vector_field
from apps.core.conf import get_setting, resolve_degree, resolve_seed
from apps.core.exceptions import DegreeError, StructureError
from apps.core.results import CheckResult
from apps.courant.services.algebroids import AlgebroidData, AlgebroidForm, lie_algebroid_d
from apps.courant.services.sections import ConstantSection, GeneralizedSection, SectionFamily
from apps.lie.services.bialgebras import LieBialgebraData, bialgebra_check
from apps.scalars.services import linalg
from apps.scalars.services.polynomials import monomials_up_to

logger = logging.getLogger(__name__)

HALF = QQ(1, 2)


def _random_count(random_count: Optional[int]) -> int:
    return int(get_setting("RANDOM_SECTIONS") if random_count is None else random_count)


# -----------------
# Patch model
# -----------------
@dataclass(frozen=True, eq=False)
class CourantPatchModel:
    patch: Patch
    twist: Optional[PolyForm] = None
    exact_term: bool = True
    validate: bool = True

    def __post_init__(self):
        if self.twist is not None:
            self.patch.check_same(self.twist.patch)
            if self.twist.degree != 3:
                raise DegreeError(f"twist must be a 3-form, got degree {self.twist.degree}")
            if self.validate:
                d_twist = exterior_derivative(self.twist)
                if not d_twist.is_zero():
                    raise StructureError("twist form not closed", witness=str(d_twist))
        logger.debug("Courant model on %s (%s)", self.patch.names, self.mode)

    @classmethod
    def standard(cls, patch: Patch) -> CourantPatchModel:
        return cls(patch)

    @classmethod
    def twisted(cls, patch: Patch, eta: PolyForm, validate: bool = True) -> CourantPatchModel:
        """Twisted by ``eta``; a non-closed form is rejected unless ``validate`` is off."""
        return cls(patch, eta, True, validate)

    @classmethod
    def broken_axiom5(cls, patch: Patch) -> CourantPatchModel:
        return cls(patch, None, False)

    @property
    def mode(self) -> str:
        if not self.exact_term:
            return "broken-axiom5"
        return "twisted" if self.twist is not None else "standard"

    @property
    def rank(self) -> int:
        return 2 * self.patch.dimension

    @cached_property
    def domain(self):
        return self.patch.ring.to_domain()

    # -----------------
    # Sections
    # -----------------
    def zero_section(self) -> GeneralizedSection:
        return GeneralizedSection.zero(self.patch)

    def section(self, comps: Sequence) -> GeneralizedSection:
        return GeneralizedSection.from_components(self.patch, comps)

    def components(self, e: GeneralizedSection) -> list:
        return e.components()

    def frame(self) -> list[GeneralizedSection]:
        """d/dx^1..d/dx^n, then dx^1..dx^n."""
        vectors = [GeneralizedSection.vector(PolyVectorField.coordinate(self.patch, i)) for i in range(self.patch.dimension)]
        covectors = [GeneralizedSection.covector(PolyForm.basis(self.patch, i)) for i in range(self.patch.dimension)]
        return vectors + covectors

    def frame_labels(self) -> list[str]:
        names = self.patch.names
        return [f"d/d{name}" for name in names] + [f"d{name}" for name in names]

    def coordinate_functions(self) -> tuple:
        return self.patch.coordinates

    def family(self, degree: Optional[int] = None, seed: Optional[int] = None, random_count: Optional[int] = None) -> SectionFamily:
        """Frame, monomial multiples of the frame, and seeded random sections."""
        degree = resolve_degree(degree)
        seed = resolve_seed(seed)
        labels = {}
        frame = tuple(self.frame())
        for s, label in zip(frame, self.frame_labels()):
            labels[id(s)] = label
        monomials = monomials_up_to(self.patch.ring, degree)[1:]
        scaled = []
        for m in monomials:
            for s, label in zip(frame, self.frame_labels()):
                section = s.scale(m)
                labels[id(section)] = f"({m})*{label}"
                scaled.append(section)
        rng = make_rng(seed)
        randoms = []
        for i in range(_random_count(random_count)):
            section = GeneralizedSection(
                random_vector_field(self.patch, rng, degree), random_form(self.patch, rng, 1, poly_degree=degree)
            )
            labels[id(section)] = f"random[{i}]"
            randoms.append(section)
        return SectionFamily(frame, tuple(scaled), tuple(randoms), tuple(monomials), labels, degree, seed)

    # -----------------
    # Structure maps
    # -----------------
    def pair(self, e1: GeneralizedSection, e2: GeneralizedSection):
        return e1.form(e2.vf) + e2.form(e1.vf)

    def anchor(self, e: GeneralizedSection) -> PolyVectorField:
        return e.vf

    def rho_apply(self, e: GeneralizedSection, f):
        return e.vf.apply(f)

    def d_E(self, f) -> GeneralizedSection:
        """0 + df, so that <d_E f, e> = rho(e) f."""
        return GeneralizedSection.covector(PolyForm.differential(self.patch, f))

    def bracket(self, e1: GeneralizedSection, e2: GeneralizedSection) -> GeneralizedSection:
        out = _untwisted(e1, e2, self.exact_term)
        if self.twist is not None:
            out = out + GeneralizedSection.covector(_twist_term(self.twist, e1.vf, e2.vf))
        return out


def _untwisted(e1: GeneralizedSection, e2: GeneralizedSection, exact_term: bool = True) -> GeneralizedSection:
    e1.patch.check_same(e2.patch)
    X, xi = e1.vf, e1.form
    Y, eta = e2.vf, e2.form
    form = lie_derivative(X, eta) - lie_derivative(Y, xi)
    if exact_term:
        form = form - exterior_derivative(interior_product(X, eta) - interior_product(Y, xi)).scale(HALF)
    return GeneralizedSection(lie_bracket_vf(X, Y), form)


def _twist_term(eta: PolyForm, X: PolyVectorField, Y: PolyVectorField) -> PolyForm:
    return interior_product(X, interior_product(Y, eta))


def courant_bracket(E: CourantPatchModel, e1: GeneralizedSection, e2: GeneralizedSection) -> GeneralizedSection:
    """The standard bracket on TM + T*M."""
    if E.twist is not None:
        raise StructureError("model is twisted; use twisted_bracket")
    E.patch.check_same(e1.patch)
    return _untwisted(e1, e2, E.exact_term)


def twisted_bracket(E: CourantPatchModel, e1: GeneralizedSection, e2: GeneralizedSection) -> GeneralizedSection:
    """The standard bracket plus i_X1 i_X2 H."""
    if E.twist is None:
        raise StructureError("model has no twist form")
    E.patch.check_same(e1.patch)
    return E.bracket(e1, e2)


def exactness_check(E) -> CheckResult:
    """0 -> T*M -> E -> TM -> 0 exact: rho rho* = 0, rho onto, ker rho = im rho*."""
    if not isinstance(E, CourantPatchModel):
        return CheckResult.fail("anchor", detail="the anchor vanishes at constant sections")
    n = E.patch.dimension
    for i, x in enumerate(E.coordinate_functions()):
        image = E.anchor(E.d_E(x))
        if not image.is_zero():
            return CheckResult.fail(("rho rho*", E.patch.names[i]), str(image))
    frame = E.frame()
    anchor_rows = [list(E.anchor(e).components) for e in frame]
    anchor_rank = linalg.rank(anchor_rows, E.domain)
    if anchor_rank != n:
        return CheckResult.fail("rho onto", anchor_rank)
    dual_rows = [E.d_E(x).components() for x in E.coordinate_functions()]
    dual_rank = linalg.rank(dual_rows, E.domain)
    if dual_rank != E.rank - anchor_rank:
        return CheckResult.fail("ker rho", dual_rank)
    return CheckResult.ok(f"rank {E.rank} over dimension {n}")


# -----------------
# Constant-section model
# -----------------
@dataclass(frozen=True, eq=False)
class ConstantCourantModel:
    """k + k* of a Lie bialgebra, sections constant in the frame e_1..e_n, eps^1..eps^n."""

    bialgebra: LieBialgebraData
    validate: bool = True

    def __post_init__(self):
        if self.validate:
            result = bialgebra_check(self.bialgebra)
            if not result:
                raise StructureError("not a Lie bialgebra", witness=result.witness)

    @cached_property
    def k_algebroid(self) -> AlgebroidData:
        return AlgebroidData.from_lie_algebra(self.bialgebra.k)

    @cached_property
    def dual_algebroid(self) -> AlgebroidData:
        return AlgebroidData.from_lie_algebra(self.bialgebra.dual)

    @property
    def dimension(self) -> int:
        return self.bialgebra.dimension

    @property
    def rank(self) -> int:
        return 2 * self.dimension

    @property
    def domain(self):
        return QQ

    @property
    def mode(self) -> str:
        return "bialgebroid"

    # -----------------
    # Sections
    # -----------------
    def zero_section(self) -> ConstantSection:
        return ConstantSection.zero(self.rank)

    def section(self, comps: Sequence) -> ConstantSection:
        if len(comps) != self.rank:
            raise StructureError(f"section has {len(comps)} components, expected {self.rank}")
        return ConstantSection(tuple(comps))

    def components(self, e: ConstantSection) -> list:
        return e.components()

    def frame(self) -> list[ConstantSection]:
        return [ConstantSection.unit(self.rank, a) for a in range(self.rank)]

    def frame_labels(self) -> list[str]:
        return list(self.bialgebra.names())

    def coordinate_functions(self) -> tuple:
        return ()

    def family(self, degree: Optional[int] = None, seed: Optional[int] = None, random_count: Optional[int] = None) -> SectionFamily:
        degree = resolve_degree(degree)
        seed = resolve_seed(seed)
        frame = tuple(self.frame())
        labels = {id(s): label for s, label in zip(frame, self.frame_labels())}
        rng = make_rng(seed)
        randoms = []
        for i in range(_random_count(random_count)):
            section = ConstantSection(tuple(random_rational(rng) for _ in range(self.rank)))
            labels[id(section)] = f"random[{i}]"
            randoms.append(section)
        return SectionFamily(frame, (), tuple(randoms), (QQ.one,), labels, degree, seed)

    # -----------------
    # Structure maps
    # -----------------
    def pair(self, e1: ConstantSection, e2: ConstantSection):
        X, xi = self.bialgebra.split(e1.values)
        Y, eta = self.bialgebra.split(e2.values)
        return sum((a * b for a, b in zip(xi, Y)), QQ.zero) + sum((a * b for a, b in zip(eta, X)), QQ.zero)

    def rho_apply(self, e: ConstantSection, f):
        return QQ.zero

    def d_E(self, f) -> ConstantSection:
        return self.zero_section()

    def bracket(self, e1: ConstantSection, e2: ConstantSection) -> ConstantSection:
        """([X,Y] + L_xi Y - L_eta X) + ([xi,eta] + L_X eta - L_Y xi).

        At constant sections L_X eta = i_X d eta and the exact terms vanish.
        """
        X, xi = self.bialgebra.split(e1.values)
        Y, eta = self.bialgebra.split(e2.values)
        k, dual = self.k_algebroid, self.dual_algebroid
        k_part = [
            a + b - c
            for a, b, c in zip(k.bracket(X, Y), _lie_derivative(dual, xi, Y), _lie_derivative(dual, eta, X))
        ]
        dual_part = [
            a + b - c
            for a, b, c in zip(dual.bracket(xi, eta), _lie_derivative(k, X, eta), _lie_derivative(k, Y, xi))
        ]
        return ConstantSection(tuple(k_part + dual_part))


def _lie_derivative(data: AlgebroidData, x: Sequence, alpha: Sequence) -> list:
    """(i_x d alpha)_j = sum_i x_i d alpha(s_i, s_j) for a constant 1-form alpha."""
    d_alpha = lie_algebroid_d(data, AlgebroidForm(data, 1, {(i,): c for i, c in enumerate(alpha) if c}))
    return [
        sum((xi * d_alpha.value(i, j) for i, xi in enumerate(x) if xi), QQ.zero) for j in range(data.rank)
    ]


def bialgebroid_to_courant(bi: LieBialgebraData) -> ConstantCourantModel:
    return ConstantCourantModel(bi)
