# FILE: apps/cartan/services/frames.py
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from sympy import QQ

from apps.cartan.services.alternating import Index
from apps.cartan.services.fields import PolyVectorField, frame_matrix, lie_bracket_vf
from apps.cartan.services.forms import PolyForm, exterior_derivative
from apps.cartan.services.patch import Patch
from apps.core.exceptions import CourantError, FrameError, StructureError
from apps.scalars.services.linalg import coordinates, inverse
from apps.scalars.services.polynomials import Polynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EigenFrame:
    """Para-complex structure J on TM given by an eigenframe.

    The first half of ``frame`` spans T+M (J = +1), the second half T-M (J = -1). The
    frame matrix must have a nonzero constant determinant so that the dual coframe has
    polynomial entries.
    """

    patch: Patch
    frame: tuple[PolyVectorField, ...]
    _inverse: list = field(init=False, repr=False)

    def __post_init__(self):
        frame = tuple(self.frame)
        n = self.patch.dimension
        if len(frame) != n or n % 2:
            raise FrameError(f"an eigenframe needs {n} fields and an even dimension")
        for X in frame:
            self.patch.check_same(X.patch)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(
            self, "_inverse", inverse(frame_matrix(frame), self.patch.ring.to_domain())
        )

    @classmethod
    def coordinate_split(cls, patch: Patch, plus: Sequence[str]) -> EigenFrame:
        """Coordinates named in ``plus`` are z+, the remaining ones z-."""
        plus_idx = [patch.index(n) for n in plus]
        minus_idx = [i for i in range(patch.dimension) if i not in plus_idx]
        return cls(patch, tuple(PolyVectorField.coordinate(patch, i) for i in plus_idx + minus_idx))

    # -----------------
    # Frame data
    # -----------------
    @property
    def half(self) -> int:
        return self.patch.dimension // 2

    @property
    def plus(self) -> tuple[PolyVectorField, ...]:
        return self.frame[: self.half]

    @property
    def minus(self) -> tuple[PolyVectorField, ...]:
        return self.frame[self.half:]

    def sign(self, a: int) -> int:
        return 1 if a < self.half else -1

    @cached_property
    def coframe(self) -> tuple[PolyForm, ...]:
        """theta^a with theta^a(frame_b) = delta_ab."""
        n = self.patch.dimension
        return tuple(
            PolyForm(self.patch, 1, {(i,): self._inverse[i][a] for i in range(n)})
            for a in range(n)
        )

    def frame_coordinates(self, X: PolyVectorField) -> list[Polynomial]:
        self.patch.check_same(X.patch)
        return coordinates(self._inverse, list(X.components))

    def _combine(self, coeffs: Sequence[Polynomial], which: Sequence[int]) -> PolyVectorField:
        out = PolyVectorField.zero(self.patch)
        for a in which:
            if coeffs[a]:
                out = out + self.frame[a].scale(coeffs[a])
        return out

    def plus_part(self, X: PolyVectorField) -> PolyVectorField:
        return self._combine(self.frame_coordinates(X), range(self.half))

    def minus_part(self, X: PolyVectorField) -> PolyVectorField:
        return self._combine(self.frame_coordinates(X), range(self.half, self.patch.dimension))

    def apply(self, X: PolyVectorField) -> PolyVectorField:
        return self.plus_part(X) - self.minus_part(X)

    def in_plus(self, X: PolyVectorField) -> bool:
        return self.minus_part(X).is_zero()

    def in_minus(self, X: PolyVectorField) -> bool:
        return self.plus_part(X).is_zero()


# -----------------
# Integrability
# -----------------
def nijenhuis_tm(J: EigenFrame, X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    """4N(X,Y) = [X,Y] - J[X,JY] - J[JX,Y] + [JX,JY]."""
    JX, JY = J.apply(X), J.apply(Y)
    four_n = (
        lie_bracket_vf(X, Y)
        - J.apply(lie_bracket_vf(X, JY))
        - J.apply(lie_bracket_vf(JX, Y))
        + lie_bracket_vf(JX, JY)
    )
    return four_n.scale(QQ(1, 4))


@dataclass
class InvolutivityReport:
    plus: bool
    minus: bool
    witness: Optional[tuple[int, int]] = None  # frame indices of a non-closing pair

    @property
    def integrable(self) -> bool:
        return self.plus and self.minus


def involutivity(J: EigenFrame) -> InvolutivityReport:
    """Closure of T+ and T- under the Lie bracket, tested on frame pairs."""
    report = InvolutivityReport(plus=True, minus=True)
    h, n = J.half, J.patch.dimension
    for block, member, name in ((range(h), J.in_plus, "plus"), (range(h, n), J.in_minus, "minus")):
        for a in block:
            for b in block:
                if b <= a:
                    continue
                if not member(lie_bracket_vf(J.frame[a], J.frame[b])):
                    setattr(report, name, False)
                    report.witness = report.witness or (a, b)
    logger.debug("involutivity of %s: %s", J.patch.names, report)
    return report


def nijenhuis_vanishes(J: EigenFrame) -> bool:
    n = J.patch.dimension
    return all(
        nijenhuis_tm(J, J.frame[a], J.frame[b]).is_zero()
        for a in range(n) for b in range(a + 1, n)
    )


# -----------------
# Para-Hermitian metrics
# -----------------
@dataclass(frozen=True, eq=False)
class PolyMetric:
    """Symmetric bilinear form g on TM by its coordinate matrix."""

    patch: Patch
    matrix: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        n = self.patch.dimension
        rows = tuple(tuple(self.patch.poly(v) for v in row) for row in self.matrix)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise CourantError(f"metric must be {n}x{n}")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(n)):
            raise StructureError("metric matrix is not symmetric")
        object.__setattr__(self, "matrix", rows)

    def __call__(self, X: PolyVectorField, Y: PolyVectorField) -> Polynomial:
        acc = self.patch.zero
        for i, xi in enumerate(X.components):
            if not xi:
                continue
            for j, yj in enumerate(Y.components):
                if yj and self.matrix[i][j]:
                    acc = acc + xi * self.matrix[i][j] * yj
        return acc


def para_hermitian_metric_check(g: PolyMetric, J: EigenFrame) -> tuple[bool, Optional[tuple[int, int]]]:
    """g(JX, JY) = -g(X, Y) on the frame; equivalently T+ and T- are g-isotropic."""
    n = J.patch.dimension
    for a in range(n):
        for b in range(a, n):
            X, Y = J.frame[a], J.frame[b]
            if g(J.apply(X), J.apply(Y)) != -g(X, Y):
                return False, (a, b)
    return True, None


def metric_fundamental_form(g: PolyMetric, J: EigenFrame) -> PolyForm:
    """omega(X, Y) = g(X, JY), assembled from its values on coordinate fields."""
    patch = J.patch
    n = patch.dimension
    coords = [PolyVectorField.coordinate(patch, i) for i in range(n)]
    coeffs: dict[Index, Polynomial] = {}
    for i in range(n):
        for j in range(i + 1, n):
            coeffs[(i, j)] = g(coords[i], J.apply(coords[j]))
    return PolyForm(patch, 2, coeffs)


def para_kahler_check(g: PolyMetric, J: EigenFrame) -> bool:
    compatible, _ = para_hermitian_metric_check(g, J)
    if not compatible:
        return False
    return exterior_derivative(metric_fundamental_form(g, J)).is_zero()
