# FILE: apps/lie/services/bialgebras.py
"""
Lie bialgebras (k, k*), their Drinfeld double d = k + k*, and the canonical R-matrix.

An element of d is a vector of length 2n: the first n entries are coordinates on
e_1..e_n, the last n on the dual basis eps^1..eps^n. Coadjoint actions follow
<ad*_X eta, Z> = -<eta, [X, Z]>, and symmetrically for k* acting on k.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import QQ

from apps.core.exceptions import StructureError
from apps.core.results import CheckResult
from apps.lie.services.algebras import (
    BilinearFormData, LieAlgebraData, Vector, add, express, jacobi_check, unit, zero_vector,
)
from apps.lie.services.quadratic import QuadraticLieAlgebra, Subspace, transport_basis
from apps.scalars.services.linalg import inverse
from apps.scalars.services.polynomials import ExactScalar, to_exact

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LieBialgebraData:
    """k with a bracket on k* (the cobracket constants, written as a Lie algebra on eps^i)."""

    k: LieAlgebraData
    dual: LieAlgebraData

    def __post_init__(self):
        if self.k.dimension != self.dual.dimension:
            raise StructureError(
                f"k has dimension {self.k.dimension} but k* has dimension {self.dual.dimension}"
            )

    @property
    def dimension(self) -> int:
        return self.k.dimension

    def split(self, u: Sequence[ExactScalar]) -> tuple[Vector, Vector]:
        n = self.dimension
        return list(u[:n]), list(u[n:])

    def names(self) -> tuple[str, ...]:
        return self.k.names + tuple(f"eps{i + 1}" for i in range(self.dimension))


def coadjoint(L: LieAlgebraData, x: Sequence[ExactScalar], eta: Sequence[ExactScalar]) -> Vector:
    """ad*_x eta, with (ad*_x eta)_j = -eta([x, e_j])."""
    n = L.dimension
    return [-sum((a * b for a, b in zip(eta, L.bracket(x, unit(n, j)))), QQ.zero) for j in range(n)]


def double_bracket(bi: LieBialgebraData, u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> Vector:
    """[X + xi, Y + eta] = ([X,Y] + ad*_xi Y - ad*_eta X) + ([xi,eta] + ad*_X eta - ad*_Y xi)."""
    X, xi = bi.split(u)
    Y, eta = bi.split(v)
    k_part = add(add(bi.k.bracket(X, Y), coadjoint(bi.dual, xi, Y)), [-c for c in coadjoint(bi.dual, eta, X)])
    dual_part = add(add(bi.dual.bracket(xi, eta), coadjoint(bi.k, X, eta)), [-c for c in coadjoint(bi.k, Y, xi)])
    return k_part + dual_part


def double_algebra(bi: LieBialgebraData) -> LieAlgebraData:
    """The double d as an algebra of dimension 2n (not validated for Jacobi)."""
    m = 2 * bi.dimension
    table = [[double_bracket(bi, unit(m, a), unit(m, b)) for b in range(m)] for a in range(m)]
    return LieAlgebraData(m, table, bi.names())


def canonical_pairing(n: int) -> BilinearFormData:
    """<X + xi, Y + eta> = xi(Y) + eta(X)."""
    rows = [[QQ.zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = rows[n + i][i] = QQ.one
    return BilinearFormData(tuple(tuple(r) for r in rows))


def drinfeld_double(bi: LieBialgebraData) -> QuadraticLieAlgebra:
    """(d, canonical pairing); StructureError when the pairing is not invariant."""
    return QuadraticLieAlgebra(double_algebra(bi), canonical_pairing(bi.dimension))


def bialgebra_check(bi: LieBialgebraData) -> CheckResult:
    """Jacobi on k, on k* and on the double."""
    for label, algebra in (("k", bi.k), ("k*", bi.dual), ("double", double_algebra(bi))):
        result = jacobi_check(algebra)
        if not result:
            logger.warning("bialgebra Jacobi fails on %s at %s", label, result.witness)
            return CheckResult.fail((label,) + tuple(result.witness), result.value, f"{label}: {result.detail}")
    return CheckResult.ok()


# -----------------
# R-matrix
# -----------------
@dataclass(frozen=True, eq=False)
class LinearBivector:
    """Antisymmetric tensor on d, Lambda = sum_{a<b} L^{ab} u_a ^ u_b, stored as the full matrix."""

    matrix: tuple[tuple[ExactScalar, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def contract(self, alpha: Sequence[ExactScalar]) -> Vector:
        """iota_alpha Lambda on the first slot: iota(u ^ w) = alpha(u) w - alpha(w) u."""
        n = self.dimension
        return [sum((alpha[a] * self.matrix[a][b] for a in range(n)), QQ.zero) for b in range(n)]

    def sharp(self, alpha: Sequence[ExactScalar]) -> Vector:
        """Lambda(., alpha): contraction on the second slot."""
        return [-c for c in self.contract(alpha)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearBivector):
            return NotImplemented
        return self.matrix == other.matrix


def _wedge_sum(pairs: Sequence[tuple[Vector, Vector]], coeff: ExactScalar) -> LinearBivector:
    m = len(pairs[0][0]) if pairs else 0
    rows = [[QQ.zero] * m for _ in range(m)]
    for u, w in pairs:
        for a in range(m):
            if not u[a] and not w[a]:
                continue
            for b in range(m):
                rows[a][b] += coeff * (u[a] * w[b] - w[a] * u[b])
    return LinearBivector(tuple(tuple(r) for r in rows))


def r_matrix(bi: LieBialgebraData, basis_change: Optional[Sequence[Sequence[object]]] = None) -> LinearBivector:
    """Lambda = 1/2 sum_i e_i ^ eps^i.

    With ``basis_change`` P the sum runs over e'_i = sum_j P_ij e_j and the co-transformed
    dual basis eps'^i = sum_j (P^-1)_ji eps^j; the tensor does not change.
    """
    n = bi.dimension
    m = 2 * n
    if basis_change is None:
        pairs = [(unit(m, i), unit(m, n + i)) for i in range(n)]
    else:
        P = [[to_exact(c) for c in row] for row in basis_change]
        P_inv = inverse(P)
        pairs = []
        for i in range(n):
            e_new = [P[i][j] for j in range(n)] + [QQ.zero] * n
            eps_new = [QQ.zero] * n + [P_inv[j][i] for j in range(n)]
            pairs.append((e_new, eps_new))
    return _wedge_sum(pairs, QQ(1, 2))


def r_matrix_coboundary_check(bi: LieBialgebraData, Lam: LinearBivector) -> CheckResult:
    """Lambda# sends the covector dual to eps^i to 1/2 e_i and the one dual to e_i to -1/2 eps^i."""
    n = bi.dimension
    m = 2 * n
    half = QQ(1, 2)
    for i in range(n):
        to_k = Lam.sharp(unit(m, n + i))
        if to_k != [half * c for c in unit(m, i)]:
            return CheckResult.fail(("k*", i), to_k)
        to_dual = Lam.sharp(unit(m, i))
        if to_dual != [-half * c for c in unit(m, n + i)]:
            return CheckResult.fail(("k", i), to_dual)
    return CheckResult.ok()


# -----------------
# From Manin triples
# -----------------
@dataclass(frozen=True)
class TransportedBialgebra:
    bialgebra: LieBialgebraData
    e: list[Vector]
    eps: list[Vector]


def bialgebra_from_manin_triple(Q: QuadraticLieAlgebra, L1: Subspace, L2: Subspace) -> TransportedBialgebra:
    """Identify L2 with L1* through the pairing and read off both brackets."""
    e, eps = transport_basis(Q, L1, L2)
    n = len(e)

    def constants(basis: list[Vector]) -> list[list[Vector]]:
        table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                coords = express(basis, Q.algebra.bracket(basis[i], basis[j]))
                table[i][j] = coords
                table[j][i] = [-c for c in coords]
        return table

    k = LieAlgebraData(n, constants(e))
    dual = LieAlgebraData(n, constants(eps))
    return TransportedBialgebra(LieBialgebraData(k, dual), e, eps)


def manin_double_agreement(Q: QuadraticLieAlgebra, transported: TransportedBialgebra) -> CheckResult:
    """The double bracket reproduces the bracket of Q on the transported basis e + eps."""
    bi = transported.bialgebra
    basis = transported.e + transported.eps
    m = len(basis)
    for a in range(m):
        for b in range(a + 1, m):
            expected = express(basis, Q.algebra.bracket(basis[a], basis[b]))
            got = double_bracket(bi, unit(m, a), unit(m, b))
            if got != expected:
                return CheckResult.fail((a, b), (got, expected))
    return CheckResult.ok()
