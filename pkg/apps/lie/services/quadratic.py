# FILE: apps/lie/services/quadratic.py
from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from sympy import QQ

from apps.core.exceptions import StructureError
from apps.core.results import CheckResult
from apps.lie.services.algebras import (
    BilinearFormData, LieAlgebraData, Vector, ad_invariance_check, closed_under_bracket,
    combine, direct_sum, independent, orthogonal_sum, unit,
)
from apps.scalars.services.linalg import inverse, rank, transpose
from apps.scalars.services.polynomials import ExactScalar

logger = logging.getLogger(__name__)

Subspace = Sequence[Sequence[ExactScalar]]


@dataclass(frozen=True, eq=False)
class QuadraticLieAlgebra:
    """A Lie algebra with an ad-invariant symmetric pairing."""

    algebra: LieAlgebraData
    pairing: BilinearFormData

    def __post_init__(self):
        invariance = ad_invariance_check(self.algebra, self.pairing)
        if not invariance:
            raise StructureError("pairing is not ad-invariant", witness=invariance.witness)

    @property
    def dimension(self) -> int:
        return self.algebra.dimension


# -----------------
# Lagrangian subalgebras and Manin triples
# -----------------
def lagrangian_check(W: Subspace, Q: QuadraticLieAlgebra) -> CheckResult:
    """Isotropic, half-dimensional and closed under the bracket."""
    W = [list(w) for w in W]
    if not independent(W):
        raise StructureError("subspace generators are linearly dependent")
    for a in range(len(W)):
        for b in range(a, len(W)):
            value = Q.pairing(W[a], W[b])
            if value:
                return CheckResult.fail((a, b), value, "not isotropic")
    if 2 * len(W) != Q.dimension:
        return CheckResult.fail(len(W), detail=f"dimension {len(W)} is not half of {Q.dimension}")
    pair = closed_under_bracket(Q.algebra, W)
    if pair is not None:
        return CheckResult.fail(pair, Q.algebra.bracket(W[pair[0]], W[pair[1]]), "not closed under the bracket")
    return CheckResult.ok()


def manin_triple_check(Q: QuadraticLieAlgebra, L1: Subspace, L2: Subspace) -> CheckResult:
    for label, L in (("first", L1), ("second", L2)):
        result = lagrangian_check(L, Q)
        if not result:
            return CheckResult.fail((label, result.witness), result.value, f"{label} subspace: {result.detail}")
    if rank([list(v) for v in L1] + [list(v) for v in L2]) != Q.dimension:
        return CheckResult.fail("intersection", detail="subspaces are not transverse")
    return CheckResult.ok()


# -----------------
# Doubles
# -----------------
@dataclass(frozen=True)
class QuadraticDouble:
    """g + g with B + (-B), its diagonal and anti-diagonal."""

    quadratic: QuadraticLieAlgebra
    diagonal: list[Vector]
    antidiagonal: list[Vector]


def quadratic_double(Q: QuadraticLieAlgebra) -> QuadraticDouble:
    n = Q.dimension
    algebra = direct_sum(Q.algebra, Q.algebra)
    pairing = orthogonal_sum(Q.pairing, Q.pairing.negated())
    diagonal = [unit(n, i) + unit(n, i) for i in range(n)]
    antidiagonal = [unit(n, i) + [-c for c in unit(n, i)] for i in range(n)]
    return QuadraticDouble(QuadraticLieAlgebra(algebra, pairing), diagonal, antidiagonal)


# -----------------
# Para-complex structure of a Manin triple
# -----------------
@dataclass(frozen=True, eq=False)
class MatrixParaStructure:
    """J = +1 on ``plus``, -1 on ``minus`` (complementary subspaces of Q)."""

    quadratic: QuadraticLieAlgebra
    plus: tuple[tuple[ExactScalar, ...], ...]
    minus: tuple[tuple[ExactScalar, ...], ...]

    def __post_init__(self):
        if len(self.plus) + len(self.minus) != self.quadratic.dimension:
            raise StructureError("eigenspaces do not add up to the whole algebra")
        if not independent(list(self.plus) + list(self.minus)):
            raise StructureError("eigenspaces are not transverse")

    @cached_property
    def matrix(self) -> list[list[ExactScalar]]:
        """J in the algebra basis: columns are images of the basis vectors."""
        frame = [list(v) for v in self.plus] + [list(v) for v in self.minus]
        signs = [QQ.one] * len(self.plus) + [-QQ.one] * len(self.minus)
        # J = F^T D (F^T)^-1 with the frame vectors as rows of F
        fr_t = transpose(frame)
        inv = inverse(fr_t)
        n = len(frame)
        return [
            [sum((fr_t[i][a] * signs[a] * inv[a][j] for a in range(n)), QQ.zero) for j in range(n)]
            for i in range(n)
        ]

    def apply(self, x: Sequence[ExactScalar]) -> Vector:
        return [sum((row[j] * x[j] for j in range(len(x))), QQ.zero) for row in self.matrix]

    def squares_to_identity(self) -> bool:
        n = self.quadratic.dimension
        return all(self.apply(self.apply(unit(n, i))) == unit(n, i) for i in range(n))

    def compatibility_check(self) -> CheckResult:
        """B(Jx, Jy) = -B(x, y) on basis pairs."""
        n = self.quadratic.dimension
        B = self.quadratic.pairing
        for i in range(n):
            for j in range(i, n):
                x, y = unit(n, i), unit(n, j)
                value = B(self.apply(x), self.apply(y)) + B(x, y)
                if value:
                    return CheckResult.fail((i, j), value)
        return CheckResult.ok()

    def integrability_check(self) -> CheckResult:
        for label, space in (("plus", self.plus), ("minus", self.minus)):
            pair = closed_under_bracket(self.quadratic.algebra, [list(v) for v in space])
            if pair is not None:
                return CheckResult.fail((label, pair), detail=f"{label} eigenspace not closed")
        return CheckResult.ok()


def manin_para_structure(Q: QuadraticLieAlgebra, L1: Subspace, L2: Subspace) -> MatrixParaStructure:
    return MatrixParaStructure(
        Q, tuple(tuple(v) for v in L1), tuple(tuple(v) for v in L2)
    )


def transport_basis(Q: QuadraticLieAlgebra, L1: Subspace, L2: Subspace) -> tuple[list[Vector], list[Vector]]:
    """(e, eps) with e the given basis of L1 and eps the basis of L2 with B(e_i, eps^j) = delta_ij."""
    e = [list(v) for v in L1]
    l2 = [list(v) for v in L2]
    pairing = [[Q.pairing(u, w) for w in l2] for u in e]
    inv = inverse(pairing)
    # eps^j = sum_k inv[k][j] l2_k
    eps = [combine([inv[k][j] for k in range(len(l2))], l2, Q.dimension) for j in range(len(e))]
    return e, eps
