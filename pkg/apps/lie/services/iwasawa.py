# FILE: apps/lie/services/iwasawa.py
"""
sl(n, C) as a real Lie algebra of dimension 2(n^2 - 1) and its Iwasawa decomposition
su(n) + a + n.

Complex matrices are DomainMatrix objects over the Gaussian rationals QQ_I. The real
basis lists the complex basis b_1..b_m (H_k = E_kk - E_k+1,k+1, then E_kl for k != l in
row-major order) followed by i*b_1..i*b_m.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from apps.core.exceptions import StructureError
from apps.core.results import CheckResult
from apps.lie.services.algebras import (
    BilinearFormData, LieAlgebraData, Vector, combine, express, subalgebra,
)
from apps.scalars.services.linalg import in_span, trace
from apps.scalars.services.polynomials import ExactScalar, to_exact

logger = logging.getLogger(__name__)

I_UNIT = QQ_I(0, 1)


def complex_matrix(rows: Sequence[Sequence[object]]) -> DomainMatrix:
    """Entries may be QQ_I elements, rationals, or (re, im) pairs."""
    def conv(e):
        if isinstance(e, tuple):
            return QQ_I(to_exact(e[0]), to_exact(e[1]))
        if isinstance(e, type(I_UNIT)):
            return e
        return QQ_I(to_exact(e))
    return DomainMatrix([[conv(e) for e in row] for row in rows], (len(rows), len(rows[0])), QQ_I)


def elementary(n: int, k: int, l: int, value=1) -> DomainMatrix:
    rows = [[QQ_I.zero] * n for _ in range(n)]
    rows[k][l] = value if isinstance(value, type(I_UNIT)) else QQ_I(to_exact(value))
    return DomainMatrix(rows, (n, n), QQ_I)


@dataclass(frozen=True, eq=False)
class IwasawaParts:
    k: DomainMatrix
    a: DomainMatrix
    n: DomainMatrix


@dataclass(frozen=True, eq=False)
class RealifiedMatrixAlgebra:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise StructureError("sl(n, C) needs n >= 2")

    # -----------------
    # Bases
    # -----------------
    @cached_property
    def _offdiagonal(self) -> list[tuple[int, int]]:
        return [(k, l) for k in range(self.n) for l in range(self.n) if k != l]

    @cached_property
    def complex_basis(self) -> list[DomainMatrix]:
        n = self.n
        diag = [elementary(n, k, k) - elementary(n, k + 1, k + 1) for k in range(n - 1)]
        return diag + [elementary(n, k, l) for k, l in self._offdiagonal]

    @property
    def complex_dimension(self) -> int:
        return self.n * self.n - 1

    @property
    def dimension(self) -> int:
        return 2 * self.complex_dimension

    @cached_property
    def real_basis(self) -> list[DomainMatrix]:
        return self.complex_basis + [b * I_UNIT for b in self.complex_basis]

    def basis_names(self) -> tuple[str, ...]:
        n = self.n
        names = [f"H{k + 1}" for k in range(n - 1)] + [f"E{k + 1}{l + 1}" for k, l in self._offdiagonal]
        return tuple(names) + tuple(f"i{name}" for name in names)

    # -----------------
    # Coordinates
    # -----------------
    def complex_coordinates(self, X: DomainMatrix) -> list:
        """Coefficients of X in the complex basis; X must be traceless."""
        rows = X.to_list()
        if trace(X) != QQ_I.zero:
            raise StructureError("matrix is not traceless")
        diag, acc = [], QQ_I.zero
        for k in range(self.n - 1):
            acc = acc + rows[k][k]
            diag.append(acc)
        return diag + [rows[k][l] for k, l in self._offdiagonal]

    def to_vector(self, X: DomainMatrix) -> Vector:
        coords = self.complex_coordinates(X)
        return [z.x for z in coords] + [z.y for z in coords]

    def from_vector(self, v: Sequence[ExactScalar]) -> DomainMatrix:
        out = DomainMatrix.zeros((self.n, self.n), QQ_I, fmt="dense")
        for c, b in zip(v, self.real_basis):
            if c:
                out = out + b * QQ_I(to_exact(c))
        return out

    @cached_property
    def algebra(self) -> LieAlgebraData:
        basis = self.real_basis
        m = self.dimension
        table = [[None] * m for _ in range(m)]
        for a in range(m):
            for b in range(m):
                table[a][b] = self.to_vector(basis[a] * basis[b] - basis[b] * basis[a])
        logger.debug("realified sl(%d, C) built with dimension %d", self.n, m)
        return LieAlgebraData(m, table, self.basis_names())

    @cached_property
    def i_operator(self) -> list[list[ExactScalar]]:
        """Multiplication by i as a real matrix (column a holds i * r_a)."""
        columns = [self.to_vector(b * I_UNIT) for b in self.real_basis]
        return [list(row) for row in zip(*columns)]

    def apply_i(self, v: Sequence[ExactScalar]) -> Vector:
        return [sum((row[j] * v[j] for j in range(len(v))), QQ.zero) for row in self.i_operator]

    # -----------------
    # Iwasawa subspaces
    # -----------------
    def su_basis(self) -> list[Vector]:
        """i(E_kk - E_k+1,k+1), then E_kl - E_lk and i(E_kl + E_lk) for k < l."""
        n = self.n
        out = [self.to_vector((elementary(n, k, k) - elementary(n, k + 1, k + 1)) * I_UNIT) for k in range(n - 1)]
        for k in range(n):
            for l in range(k + 1, n):
                out.append(self.to_vector(elementary(n, k, l) - elementary(n, l, k)))
                out.append(self.to_vector((elementary(n, k, l) + elementary(n, l, k)) * I_UNIT))
        return out

    def a_basis(self) -> list[Vector]:
        n = self.n
        return [self.to_vector(elementary(n, k, k) - elementary(n, k + 1, k + 1)) for k in range(n - 1)]

    def n_basis(self) -> list[Vector]:
        n = self.n
        out = []
        for k in range(n):
            for l in range(k + 1, n):
                out.append(self.to_vector(elementary(n, k, l)))
                out.append(self.to_vector(elementary(n, k, l, I_UNIT)))
        return out

    def an_basis(self) -> list[Vector]:
        return self.a_basis() + self.n_basis()

    def su(self) -> LieAlgebraData:
        return subalgebra(self.algebra, self.su_basis())


def iwasawa_decompose(A: RealifiedMatrixAlgebra, X: DomainMatrix) -> IwasawaParts:
    """X = k + a + n with k in su(n), a real diagonal traceless, n strictly upper triangular."""
    v = A.to_vector(X)
    K, Ab, N = A.su_basis(), A.a_basis(), A.n_basis()
    coords = express(K + Ab + N, v)
    m = A.dimension
    parts = []
    start = 0
    for block in (K, Ab, N):
        piece = combine(coords[start:start + len(block)], block, m)
        parts.append(A.from_vector(piece))
        start += len(block)
    return IwasawaParts(*parts)


def iwasawa_membership_check(A: RealifiedMatrixAlgebra, parts: IwasawaParts) -> CheckResult:
    for label, mat, basis in (("k", parts.k, A.su_basis()), ("a", parts.a, A.a_basis()), ("n", parts.n, A.n_basis())):
        if not in_span(basis, A.to_vector(mat)):
            return CheckResult.fail(label, mat.to_list())
    return CheckResult.ok()


def complex_ad(A: RealifiedMatrixAlgebra, Z: DomainMatrix) -> DomainMatrix:
    """ad_Z on sl(n, C) in the complex basis."""
    cols = [A.complex_coordinates(Z * b - b * Z) for b in A.complex_basis]
    m = len(cols)
    return DomainMatrix([[cols[j][i] for j in range(m)] for i in range(m)], (m, m), QQ_I)


def complex_killing(A: RealifiedMatrixAlgebra, X: DomainMatrix, Y: DomainMatrix):
    """kappa_C(X, Y) = 2 (n^2 - 1) Tr(ad_X ad_Y), C-bilinear, as a QQ_I element."""
    return trace(complex_ad(A, X) * complex_ad(A, Y)) * QQ_I(2 * A.complex_dimension)


def minus_im_killing(A: RealifiedMatrixAlgebra) -> BilinearFormData:
    """B(X, Y) = -Im kappa_C(X, Y) on the real basis."""
    ads = [complex_ad(A, b) for b in A.real_basis]
    factor = QQ_I(2 * A.complex_dimension)
    m = A.dimension
    rows = [[-(trace(ads[a] * ads[b]) * factor).y for b in range(m)] for a in range(m)]
    return BilinearFormData(tuple(tuple(r) for r in rows))
