# FILE: apps/courant/services/connections.py
"""
Connections A: TM -> E on an exact Courant algebroid: isotropic splittings of the anchor.

A connection is stored by its images on the coordinate frame and extended linearly over
polynomials. Graph connections A_omega(X) = X + i_X omega keep their 2-form so that the
closedness and type criteria can be reported next to the frame evaluations.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Optional, Sequence

from apps.cartan.services.fields import PolyVectorField, lie_bracket_vf
from apps.cartan.services.forms import PolyForm, interior_product
from apps.cartan.services.frames import EigenFrame, PolyMetric
from apps.cartan.services.patch import Patch
from apps.core.exceptions import DegreeError, StructureError
from apps.core.results import CheckResult
from apps.courant.services.models import CourantPatchModel
from apps.courant.services.para import ParaStructure
from apps.courant.services.sections import GeneralizedSection
from apps.scalars.services import linalg

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ConnectionMap:
    patch: Patch
    images: tuple
    omega: Optional[PolyForm] = None

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.patch.dimension:
            raise StructureError(f"a connection needs {self.patch.dimension} images, got {len(images)}")
        for e in images:
            self.patch.check_same(e.patch)
        object.__setattr__(self, "images", images)

    @classmethod
    def graph(cls, patch: Patch, omega: PolyForm) -> ConnectionMap:
        """A_omega(X) = X + i_X omega."""
        patch.check_same(omega.patch)
        if omega.degree != 2:
            raise DegreeError(f"graph connections need a 2-form, got degree {omega.degree}")
        images = []
        for i in range(patch.dimension):
            X = PolyVectorField.coordinate(patch, i)
            images.append(GeneralizedSection(X, interior_product(X, omega)))
        return cls(patch, tuple(images), omega)

    @classmethod
    def from_images(cls, patch: Patch, images: Sequence[GeneralizedSection]) -> ConnectionMap:
        return cls(patch, tuple(images))

    @classmethod
    def zero(cls, patch: Patch) -> ConnectionMap:
        return cls(patch, tuple(GeneralizedSection.zero(patch) for _ in range(patch.dimension)))

    @classmethod
    def from_metric(cls, g: PolyMetric) -> ConnectionMap:
        """X + g(X, .) for a symmetric g; isotropic only when g = 0."""
        patch = g.patch
        images = []
        for i in range(patch.dimension):
            xi = PolyForm(patch, 1, {(j,): g.matrix[i][j] for j in range(patch.dimension)})
            images.append(GeneralizedSection(PolyVectorField.coordinate(patch, i), xi))
        return cls(patch, tuple(images))

    def __call__(self, X: PolyVectorField) -> GeneralizedSection:
        self.patch.check_same(X.patch)
        out = GeneralizedSection.zero(self.patch)
        for c, image in zip(X.components, self.images):
            if c:
                out = out + image.scale(c)
        return out


def connection_check(E: CourantPatchModel, A: ConnectionMap) -> CheckResult:
    """rho o A = Id and <A X, A Y> = 0 on the coordinate frame."""
    E.patch.check_same(A.patch)
    for i, image in enumerate(A.images):
        if E.anchor(image) != PolyVectorField.coordinate(E.patch, i):
            return CheckResult.fail(("anchor", E.patch.names[i]), str(E.anchor(image)), "rho o A is not the identity")
    for i, j in combinations_with_replacement(range(E.patch.dimension), 2):
        value = E.pair(A.images[i], A.images[j])
        if value:
            return CheckResult.fail(("isotropy", (E.patch.names[i], E.patch.names[j])), str(value), "image is not isotropic")
    return CheckResult.ok()


def _require_connection(E: CourantPatchModel, A: ConnectionMap) -> None:
    result = connection_check(E, A)
    if not result:
        raise StructureError(f"invalid connection: {result.detail}", witness=result.witness)


def curvature(E: CourantPatchModel, A: ConnectionMap, X: PolyVectorField, Y: PolyVectorField) -> GeneralizedSection:
    """R(X, Y) = [A X, A Y] - A [X, Y]."""
    _require_connection(E, A)
    return E.bracket(A(X), A(Y)) - A(lie_bracket_vf(X, Y))


def flatness_check(E: CourantPatchModel, A: ConnectionMap) -> CheckResult:
    """R = 0 on coordinate frame pairs."""
    _require_connection(E, A)
    n = E.patch.dimension
    coords = [PolyVectorField.coordinate(E.patch, i) for i in range(n)]
    for i, j in combinations(range(n), 2):
        R = E.bracket(A(coords[i]), A(coords[j])) - A(lie_bracket_vf(coords[i], coords[j]))
        if not R.is_zero():
            return CheckResult.fail((f"d/d{E.patch.names[i]}", f"d/d{E.patch.names[j]}"), str(R))
    return CheckResult.ok()


def standard_K(E: CourantPatchModel, A: ConnectionMap) -> ParaStructure:
    """K = +1 on A(TM), -1 on rho*(T*M)."""
    if not isinstance(E, CourantPatchModel):
        raise StructureError("standard_K needs an exact Courant algebroid")
    _require_connection(E, A)
    n = E.patch.dimension
    plus = tuple(A.images)
    minus = tuple(GeneralizedSection.covector(PolyForm.basis(E.patch, i)) for i in range(n))
    labels = tuple(f"A(d/d{name})" for name in E.patch.names) + tuple(f"d{name}" for name in E.patch.names)
    return ParaStructure(E, plus, minus, labels)


def para_complex_connection_check(
    E: CourantPatchModel, A: ConnectionMap, J_E: ParaStructure, J_TM: EigenFrame
) -> CheckResult:
    """J_E o A = A o J_TM on the frame of J_TM; graph connections also report sigma(J., J.) = -sigma."""
    E.patch.check_same(A.patch, J_TM.patch)
    extra = {}
    if A.omega is not None:
        frame = J_TM.frame
        extra["graph_criterion"] = all(
            A.omega(J_TM.apply(frame[a]), J_TM.apply(frame[b])) == -A.omega(frame[a], frame[b])
            for a, b in combinations(range(len(frame)), 2)
        )
    for a, X in enumerate(J_TM.frame):
        lhs = J_E.apply(A(X))
        rhs = A(J_TM.apply(X))
        if lhs != rhs:
            return CheckResult.fail(("frame", a), extra or None, str(lhs - rhs))
    return CheckResult.ok(value=extra or None)


def split_check(E, J: ParaStructure, K: ParaStructure) -> CheckResult:
    """JK = KJ on the frame; L = JK squares to Id and preserves the pairing."""
    for a, e in enumerate(J.frame):
        if J.apply(K.apply(e)) != K.apply(J.apply(e)):
            return CheckResult.fail(("commute", J.labels[a]))
    L = lambda s: J.apply(K.apply(s))
    for a, e in enumerate(J.frame):
        if L(L(e)) != e:
            return CheckResult.fail(("L squared", J.labels[a]))
    for a, b in combinations_with_replacement(range(len(J.frame)), 2):
        e1, e2 = J.frame[a], J.frame[b]
        if E.pair(L(e1), L(e2)) != E.pair(e1, e2):
            return CheckResult.fail(("L isometry", J.labels[a], J.labels[b]))
    return CheckResult.ok()


def decomposition_check(E: CourantPatchModel, J: ParaStructure, A: ConnectionMap, J_TM: EigenFrame) -> CheckResult:
    """E+ = a-*(T^(0,1)) + A+(T+), E- = a+*(T^(1,0)) + A-(T-), ker a+- = im a-+*, 4 | rank E.

    a-* xi is pr+(0 + xi) and A+- is pr+- o A. Ranks are taken over the fraction field.
    """
    E.patch.check_same(A.patch, J_TM.patch)
    h = J_TM.half
    coframe = J_TM.coframe
    covector = GeneralizedSection.covector
    details = {}
    blocks = (
        ("plus", J.plus_part, range(h, 2 * h), J_TM.plus, J.plus),
        ("minus", J.minus_part, range(h), J_TM.minus, J.minus),
    )
    for name, project, dual_idx, tangent, sections in blocks:
        spanning = [project(covector(coframe[a])) for a in dual_idx] + [project(A(X)) for X in tangent]
        span_rank = linalg.rank([E.components(s) for s in spanning], E.domain)
        details[f"{name}_rank"] = span_rank
        if span_rank != J.half:
            return CheckResult.fail(("span", name), details)
        images = [project(covector(PolyForm.basis(E.patch, i))) for i in range(E.patch.dimension)]
        leak = [E.anchor(s) for s in images if not E.anchor(s).is_zero()]
        if leak:
            return CheckResult.fail(("anchor of a*", name), details, str(leak[0]))
        image_rank = linalg.rank([E.components(s) for s in images], E.domain)
        anchor_rank = linalg.rank([list(E.anchor(s).components) for s in sections], E.domain)
        details[f"{name}_kernel"] = (J.half - anchor_rank, image_rank)
        if image_rank != J.half - anchor_rank:
            return CheckResult.fail(("kernel", name), details)
    if E.rank % 4:
        return CheckResult.fail("rank", E.rank)
    return CheckResult.ok(value=details)
