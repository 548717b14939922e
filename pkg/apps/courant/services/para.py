# FILE: apps/courant/services/para.py
"""
Para-complex structures J on a Courant algebroid, given by eigenframes.

J = +1 on E+ and -1 on E-. Both eigenbundles have half the rank of E and the frame
matrix must have a nonzero constant determinant so that projections stay polynomial.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Any, Sequence

from sympy import QQ

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.frames import EigenFrame, InvolutivityReport, nijenhuis_tm
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.multivectors import PolyMultivector, schouten_bracket, sharp_rank
from apps.core.exceptions import FrameError, StructureError
from apps.core.results import CheckResult
from apps.courant.services.algebroids import (
    AlgebroidData, AlgebroidForm, LocalBialgebroidData, lie_algebroid_d,
)
from apps.courant.services.models import CourantPatchModel
from apps.courant.services.sections import GeneralizedSection
from apps.scalars.services import linalg

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ParaStructure:
    model: Any
    plus: tuple
    minus: tuple
    labels: tuple = ()
    _inverse: list = field(init=False, repr=False)

    def __post_init__(self):
        plus, minus = tuple(self.plus), tuple(self.minus)
        half = self.model.rank // 2
        if len(plus) != half or len(minus) != half:
            raise FrameError(f"eigenframes need {half} sections each, got {len(plus)} and {len(minus)}")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)
        rows = [self.model.components(e) for e in plus + minus]
        object.__setattr__(self, "_inverse", linalg.inverse(rows, self.model.domain))
        labels = tuple(self.labels) or tuple(f"e{i + 1}+" for i in range(half)) + tuple(
            f"e{i + 1}-" for i in range(half)
        )
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_components(cls, model, plus: Sequence[Sequence], minus: Sequence[Sequence], labels: Sequence[str] = ()) -> ParaStructure:
        return cls(model, tuple(model.section(c) for c in plus), tuple(model.section(c) for c in minus), tuple(labels))

    @property
    def half(self) -> int:
        return len(self.plus)

    @property
    def frame(self) -> tuple:
        return self.plus + self.minus

    def sign(self, a: int) -> int:
        return 1 if a < self.half else -1

    def coordinates(self, e) -> list:
        """c with e = sum_a c_a frame[a]."""
        return linalg.coordinates(self._inverse, self.model.components(e))

    def _combine(self, coeffs: Sequence, which) -> Any:
        out = self.model.zero_section()
        for a in which:
            if coeffs[a]:
                out = out + self.frame[a].scale(coeffs[a])
        return out

    def plus_part(self, e):
        return self._combine(self.coordinates(e), range(self.half))

    def minus_part(self, e):
        return self._combine(self.coordinates(e), range(self.half, 2 * self.half))

    def apply(self, e):
        coeffs = self.coordinates(e)
        return self._combine(coeffs, range(self.half)) - self._combine(coeffs, range(self.half, 2 * self.half))

    def in_plus(self, e) -> bool:
        return self.minus_part(e).is_zero()

    def in_minus(self, e) -> bool:
        return self.plus_part(e).is_zero()


# -----------------
# Constructors
# -----------------
def lifted(E: CourantPatchModel, J_TM: EigenFrame) -> ParaStructure:
    """E+ = T+ + ann(T+), E- = T- + ann(T-); the annihilators are spanned by the coframe."""
    E.patch.check_same(J_TM.patch)
    h = J_TM.half
    coframe = J_TM.coframe
    plus = tuple(GeneralizedSection.vector(X) for X in J_TM.plus) + tuple(
        GeneralizedSection.covector(coframe[a]) for a in range(h, 2 * h)
    )
    minus = tuple(GeneralizedSection.vector(X) for X in J_TM.minus) + tuple(
        GeneralizedSection.covector(coframe[a]) for a in range(h)
    )
    labels = tuple(f"T+[{a}]" for a in range(h)) + tuple(f"theta[{a}]" for a in range(h, 2 * h))
    labels += tuple(f"T-[{a}]" for a in range(h)) + tuple(f"theta[{a}]" for a in range(h))
    return ParaStructure(E, plus, minus, labels)


def tangent_cotangent(E: CourantPatchModel) -> ParaStructure:
    """E+ = TM, E- = T*M."""
    frame = E.frame()
    n = E.patch.dimension
    return ParaStructure(E, tuple(frame[:n]), tuple(frame[n:]), tuple(E.frame_labels()))


# -----------------
# Structure checks
# -----------------
def _same_model(E, J: ParaStructure) -> None:
    if J.model is not E:
        raise StructureError("structure belongs to another model")


def isotropy_check(E, J: ParaStructure) -> CheckResult:
    """Both eigenbundles isotropic, equivalently <J., J.> = -<., .>."""
    _same_model(E, J)
    for block in (range(J.half), range(J.half, 2 * J.half)):
        for a, b in combinations_with_replacement(block, 2):
            value = E.pair(J.frame[a], J.frame[b])
            if value:
                return CheckResult.fail((J.labels[a], J.labels[b]), str(value))
    return CheckResult.ok()


def compatibility_check(J: ParaStructure) -> CheckResult:
    """<Je1, Je2> = -<e1, e2> on every pair of frame sections."""
    E = J.model
    for a, b in combinations_with_replacement(range(2 * J.half), 2):
        e1, e2 = J.frame[a], J.frame[b]
        if E.pair(J.apply(e1), J.apply(e2)) != -E.pair(e1, e2):
            return CheckResult.fail((J.labels[a], J.labels[b]))
    return CheckResult.ok()


def integrability(E, J: ParaStructure) -> InvolutivityReport:
    """Closure of E+ and E- under the Courant bracket, on frame pairs."""
    _same_model(E, J)
    report = InvolutivityReport(plus=True, minus=True)
    h = J.half
    for block, member, name in ((range(h), J.in_plus, "plus"), (range(h, 2 * h), J.in_minus, "minus")):
        for a, b in combinations(block, 2):
            if not member(E.bracket(J.frame[a], J.frame[b])):
                setattr(report, name, False)
                report.witness = report.witness or (a, b)
    logger.debug("eigenbundle closure: %s", report)
    return report


def nijenhuis(J, X, Y):
    """N(X, Y) = 1/4 ([X,Y] - J[X,JY] - J[JX,Y] + [JX,JY]) for the Lie or the Courant bracket."""
    if isinstance(J, EigenFrame):
        return nijenhuis_tm(J, X, Y)
    E = J.model
    JX, JY = J.apply(X), J.apply(Y)
    four_n = E.bracket(X, Y) - J.apply(E.bracket(X, JY)) - J.apply(E.bracket(JX, Y)) + E.bracket(JX, JY)
    return four_n.scale(QQ(1, 4))


def nijenhuis_tensorial_check(J, X, Y, f) -> CheckResult:
    """N(fX, Y) = f N(X, Y) = N(X, fY)."""
    base = nijenhuis(J, X, Y).scale(f)
    if nijenhuis(J, X.scale(f), Y) != base:
        return CheckResult.fail("first slot")
    if nijenhuis(J, X, Y.scale(f)) != base:
        return CheckResult.fail("second slot")
    return CheckResult.ok()


def nijenhuis_vanishes_on_frame(J: ParaStructure) -> CheckResult:
    for a, b in combinations(range(2 * J.half), 2):
        value = nijenhuis(J, J.frame[a], J.frame[b])
        if not value.is_zero():
            return CheckResult.fail((J.labels[a], J.labels[b]), str(value))
    return CheckResult.ok()


@dataclass(frozen=True, eq=False)
class FundamentalForm:
    """omega(e1, e2) = <e1, J e2>."""

    structure: ParaStructure

    def __call__(self, e1, e2):
        return self.structure.model.pair(e1, self.structure.apply(e2))

    def coefficients(self) -> list[list]:
        """omega(e_i+, e_j-) on the eigenframes."""
        J = self.structure
        return [[self(p, m) for m in J.minus] for p in J.plus]

    def frame_matrix(self) -> list[list]:
        J = self.structure
        return [[self(a, b) for b in J.frame] for a in J.frame]


def fundamental_form(E, J: ParaStructure) -> FundamentalForm:
    _same_model(E, J)
    result = compatibility_check(J)
    if not result:
        raise StructureError("J is not compatible with the pairing", witness=result.witness)
    return FundamentalForm(J)


def para_holomorphic_anchor_check(E: CourantPatchModel, J_E: ParaStructure, J_TM: EigenFrame) -> CheckResult:
    """rho(J_E e) = J_TM(rho e) on the E-frame."""
    E.patch.check_same(J_TM.patch)
    for a, e in enumerate(J_E.frame):
        lhs = E.anchor(J_E.apply(e))
        rhs = J_TM.apply(E.anchor(e))
        if lhs != rhs:
            return CheckResult.fail(J_E.labels[a], str(lhs - rhs))
    return CheckResult.ok()


# -----------------
# Bivector
# -----------------
def _coordinate_covectors(E: CourantPatchModel) -> list[GeneralizedSection]:
    return [GeneralizedSection.covector(PolyForm.basis(E.patch, i)) for i in range(E.patch.dimension)]


def bivector_pi(E: CourantPatchModel, J: ParaStructure) -> tuple[PolyMultivector, PolyMultivector]:
    """(pi, 1/2 [pi, pi]) with i_mu pi = rho(pr_- (0 + mu)) for coordinate covectors mu."""
    n = E.patch.dimension
    table = []
    for mu in _coordinate_covectors(E):
        minus_image = E.anchor(J.minus_part(mu))
        plus_image = E.anchor(J.plus_part(mu))
        if minus_image != -plus_image:
            raise StructureError("projections do not split the covector", witness=str(mu))
        table.append(minus_image.components)
    for i in range(n):
        for j in range(i, n):
            if table[i][j] != -table[j][i]:
                raise StructureError("induced bivector is not antisymmetric", witness=(i, j))
    pi = PolyMultivector(E.patch, 2, {(i, j): table[i][j] for i in range(n) for j in range(i + 1, n) if table[i][j]})
    return pi, schouten_bracket(pi, pi).scale(QQ(1, 2))


def _span_rank(fields: Sequence[PolyVectorField], domain) -> int:
    return linalg.rank([list(X.components) for X in fields], domain)


def bivector_rank_law(E: CourantPatchModel, J: ParaStructure) -> CheckResult:
    """rank pi# = dim(rho(E+) meet rho(E-)), computed as rk U + rk V - rk(U + V)."""
    pi, _ = bivector_pi(E, J)
    U = [E.anchor(e) for e in J.plus]
    V = [E.anchor(e) for e in J.minus]
    meet = _span_rank(U, E.domain) + _span_rank(V, E.domain) - _span_rank(U + V, E.domain)
    rank = sharp_rank(pi)
    if rank != meet:
        return CheckResult.fail("rank", (rank, meet))
    return CheckResult.ok(value=rank)


# -----------------
# Local data and obstruction forms
# -----------------
def local_bialgebroid_data(J: ParaStructure) -> LocalBialgebroidData:
    """Anchors, structure functions and Gram matrix of E in the frame of J."""
    E = J.model
    frame = J.frame
    patch = getattr(E, "patch", None)
    anchors = tuple(E.anchor(e) for e in frame) if patch is not None else ()
    structure = [[J.coordinates(E.bracket(a, b)) for b in frame] for a in frame]
    pairing = [[E.pair(a, b) for b in frame] for a in frame]
    return LocalBialgebroidData(J.half, anchors, structure, pairing, patch)


def eigen_algebroid(J: ParaStructure, block: str) -> AlgebroidData:
    """E+ or E- with the projected bracket pr[., .] and the restricted anchor."""
    E = J.model
    h = J.half
    which = list(range(h)) if block == "plus" else list(range(h, 2 * h))
    sections = [J.frame[a] for a in which]
    structure = [[[J.coordinates(E.bracket(a, b))[c] for c in which] for b in sections] for a in sections]
    patch = getattr(E, "patch", None)
    anchors = tuple(E.anchor(e) for e in sections) if patch is not None else ()
    return AlgebroidData(h, structure, anchors, patch, tuple(J.labels[a] for a in which))


@dataclass
class ObstructionForms:
    phi: AlgebroidForm
    psi: AlgebroidForm

    def is_zero(self) -> bool:
        return self.phi.is_zero() and self.psi.is_zero()


def _obstruction(J: ParaStructure, block: str) -> AlgebroidForm:
    E = J.model
    h = J.half
    data = eigen_algebroid(J, block)
    which = range(h) if block == "plus" else range(h, 2 * h)
    project = J.minus_part if block == "plus" else J.plus_part
    sections = [J.frame[a] for a in which]
    coeffs = {}
    for a, b, c in combinations(range(h), 3):
        value = E.pair(project(E.bracket(sections[a], sections[b])), sections[c])
        if value:
            coeffs[(a, b, c)] = value
    return AlgebroidForm(data, 3, coeffs)


def obstruction_forms(E, J: ParaStructure) -> ObstructionForms:
    """phi(a, b, c) = <pr_-[a, b], c> on E+ and psi(a, b, c) = <pr_+[a, b], c> on E-."""
    _same_model(E, J)
    result = isotropy_check(E, J)
    if not result:
        raise StructureError("eigenbundles are not isotropic", witness=result.witness)
    return ObstructionForms(_obstruction(J, "plus"), _obstruction(J, "minus"))


def obstruction_cyclic_check(E, J: ParaStructure) -> CheckResult:
    """3 phi(a, b, c) = <c, N(a,b)> + <a, N(b,c)> + <b, N(c,a)>, and likewise for psi.

    N restricted to E+ is pr-[., .], so each term is phi(a, b, c) once.
    """
    forms = obstruction_forms(E, J)
    h = J.half
    for form, offset in ((forms.phi, 0), (forms.psi, h)):
        sections = J.frame[offset:offset + h]
        for a, b, c in combinations(range(h), 3):
            ea, eb, ec = sections[a], sections[b], sections[c]
            cyclic = E.pair(ec, nijenhuis(J, ea, eb)) + E.pair(ea, nijenhuis(J, eb, ec)) + E.pair(eb, nijenhuis(J, ec, ea))
            if form.value(a, b, c) * 3 != cyclic:
                labels = J.labels[offset + a], J.labels[offset + b], J.labels[offset + c]
                return CheckResult.fail(labels, (str(form.value(a, b, c)), str(cyclic)))
    return CheckResult.ok()


def obstruction_closed_check(E, J: ParaStructure) -> CheckResult:
    """d+ phi = 0 and d- psi = 0 with the Cartan formula on each eigenbundle."""
    forms = obstruction_forms(E, J)
    for name, form in (("d+phi", forms.phi), ("d-psi", forms.psi)):
        d_form = lie_algebroid_d(form.data, form)
        if not d_form.is_zero():
            return CheckResult.fail(name, str(d_form))
    return CheckResult.ok()
