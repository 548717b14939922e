# FILE: apps/courant/services/morphisms.py
"""
Bundle maps between Courant algebroids over the same patch, covering the identity.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Optional

from sympy import QQ

from apps.cartan.services.forms import PolyForm, exterior_derivative, interior_product
from apps.core.conf import resolve_degree
from apps.core.exceptions import DegreeError, StructureError
from apps.core.results import CheckResult
from apps.courant.services.models import CourantPatchModel
from apps.courant.services.sections import GeneralizedSection
from apps.scalars.services.polynomials import monomials_up_to

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BundleMap:
    """Linear over polynomials; ``images`` are the images of the source frame d/dx^i, dx^i."""

    source: CourantPatchModel
    target: CourantPatchModel
    images: tuple
    omega: Optional[PolyForm] = None

    def __post_init__(self):
        self.source.patch.check_same(self.target.patch)
        images = tuple(self.images)
        if len(images) != self.source.rank:
            raise StructureError(f"a bundle map needs {self.source.rank} images, got {len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, E: CourantPatchModel, F: Optional[CourantPatchModel] = None) -> BundleMap:
        return cls(E, F or E, tuple(E.frame()))

    @classmethod
    def b_field(cls, E: CourantPatchModel, omega: PolyForm, F: Optional[CourantPatchModel] = None) -> BundleMap:
        """e^omega: X + xi -> X + (xi + i_X omega)."""
        if omega.degree != 2:
            raise DegreeError(f"a B-field is a 2-form, got degree {omega.degree}")
        images = [e + GeneralizedSection.covector(interior_product(e.vf, omega)) if not e.vf.is_zero() else e for e in E.frame()]
        return cls(E, F or E, tuple(images), omega)

    def __call__(self, e: GeneralizedSection) -> GeneralizedSection:
        out = self.target.zero_section()
        for c, image in zip(self.source.components(e), self.images):
            if c:
                out = out + image.scale(c)
        return out


@dataclass
class MorphismReport:
    isometry: CheckResult
    anchor: CheckResult
    differential: CheckResult
    tensorial: CheckResult
    in_cotangent: CheckResult
    deviations: dict = field(default_factory=dict)
    twist_terms: dict = field(default_factory=dict)

    @property
    def bracket_preserved(self) -> bool:
        return not self.deviations

    @property
    def courant_morphism(self) -> bool:
        return bool(self.isometry and self.anchor and self.differential and self.bracket_preserved)


def deviation(psi: BundleMap, e1: GeneralizedSection, e2: GeneralizedSection) -> GeneralizedSection:
    """psi[e1, e2]_E - [psi e1, psi e2]_F."""
    return psi(psi.source.bracket(e1, e2)) - psi.target.bracket(psi(e1), psi(e2))


def morphism_check(psi: BundleMap, E: CourantPatchModel, F: CourantPatchModel, degree: Optional[int] = None) -> MorphismReport:
    E.patch.check_same(F.patch)
    if psi.source is not E or psi.target is not F:
        raise StructureError("bundle map does not go from E to F")
    frame = E.frame()
    labels = E.frame_labels()

    isometry = CheckResult.ok()
    for a, b in combinations_with_replacement(range(len(frame)), 2):
        if F.pair(psi(frame[a]), psi(frame[b])) != E.pair(frame[a], frame[b]):
            isometry = CheckResult.fail((labels[a], labels[b]))
            break

    anchor = CheckResult.ok()
    for a, e in enumerate(frame):
        if F.anchor(psi(e)) != E.anchor(e):
            anchor = CheckResult.fail(labels[a])
            break

    monomials = monomials_up_to(E.patch.ring, resolve_degree(degree))[1:]
    differential = CheckResult.ok()
    for f in monomials:
        if psi(E.d_E(f)) != F.d_E(f):
            differential = CheckResult.fail(str(f))
            break

    d_omega = exterior_derivative(psi.omega) if psi.omega is not None else None
    deviations, twist_terms = {}, {}
    in_cotangent = CheckResult.ok()
    for a, b in combinations(range(len(frame)), 2):
        key = (labels[a], labels[b])
        D = deviation(psi, frame[a], frame[b])
        if d_omega is not None and d_omega.degree > 1:
            term = interior_product(frame[a].vf, interior_product(frame[b].vf, d_omega))
            if not term.is_zero():
                twist_terms[key] = str(term)
        if D.is_zero():
            continue
        deviations[key] = str(D)
        if in_cotangent and not D.vf.is_zero():
            in_cotangent = CheckResult.fail(key, str(D.vf))

    tensorial = CheckResult.ok()
    for (a, b), f in ((pair, f) for pair in combinations(range(len(frame)), 2) for f in E.patch.coordinates):
        e1, e2 = frame[a], frame[b]
        scaled = deviation(psi, e1, e2.scale(f)) - deviation(psi, e1, e2).scale(f)
        correction = (
            psi(e2).scale(E.rho_apply(e1, f) - F.rho_apply(psi(e1), f))
            - psi(E.d_E(f)).scale(E.pair(e1, e2) * QQ(1, 2))
            + F.d_E(f).scale(F.pair(psi(e1), psi(e2)) * QQ(1, 2))
        )
        if scaled != correction:
            tensorial = CheckResult.fail((labels[a], labels[b], str(f)))
            break

    report = MorphismReport(isometry, anchor, differential, tensorial, in_cotangent, deviations, twist_terms)
    if deviations:
        logger.info("bracket deviations on %d frame pairs", len(deviations))
    return report
