# FILE: apps/lie/services/algebras.py
"""
Finite-dimensional Lie algebras given by structure constants, and symmetric bilinear
forms on them.

Elements are coordinate vectors (lists of QQ) in the algebra's basis. The constants
are stored densely as ``constants[i][j][k] = C^k_ij`` with [e_i, e_j] = sum_k C^k_ij e_k.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Sequence

from sympy import QQ

from apps.core.exceptions import StructureError
from apps.core.results import CheckResult
from apps.scalars.services.linalg import determinant, in_span, rank, solve, to_matrix, trace, transpose
from apps.scalars.services.polynomials import ExactScalar, to_exact

logger = logging.getLogger(__name__)

Vector = list[ExactScalar]
Brackets = Mapping[tuple[int, int], Mapping[int, object]]


def unit(dimension: int, index: int) -> Vector:
    return [QQ.one if i == index else QQ.zero for i in range(dimension)]


def zero_vector(dimension: int) -> Vector:
    return [QQ.zero] * dimension


def add(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> Vector:
    return [a + b for a, b in zip(u, v)]


def scale(c, u: Sequence[ExactScalar]) -> Vector:
    c = to_exact(c)
    return [c * a for a in u]


def combine(coeffs: Sequence[ExactScalar], vectors: Sequence[Sequence[ExactScalar]], dimension: int) -> Vector:
    out = zero_vector(dimension)
    for c, v in zip(coeffs, vectors):
        if c:
            out = add(out, scale(c, v))
    return out


def express(basis: Sequence[Sequence[ExactScalar]], vector: Sequence[ExactScalar]) -> Vector:
    """Coordinates of ``vector`` in the independent family ``basis``; StructureError if outside."""
    return solve(transpose(basis), list(vector))


# -----------------
# Lie algebras
# -----------------
@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    dimension: int
    constants: tuple = field(repr=False)
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.dimension
        table = tuple(
            tuple(tuple(to_exact(c) for c in self.constants[i][j]) for j in range(n)) for i in range(n)
        )
        for i in range(n):
            for j in range(n):
                if len(table[i][j]) != n:
                    raise StructureError(f"bracket [{i},{j}] has {len(table[i][j])} components, expected {n}")
                if any(a != -b for a, b in zip(table[i][j], table[j][i])):
                    raise StructureError(f"constants are not antisymmetric at ({i},{j})", witness=(i, j))
        object.__setattr__(self, "constants", table)
        names = tuple(self.names) or tuple(f"e{i + 1}" for i in range(n))
        if len(names) != n:
            raise StructureError(f"{len(names)} basis names for dimension {n}")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_brackets(cls, dimension: int, brackets: Brackets, names: Sequence[str] = ()) -> LieAlgebraData:
        """Sparse constructor: {(i, j): {k: C^k_ij}}; (j, i) is filled in by antisymmetry."""
        table = [[zero_vector(dimension) for _ in range(dimension)] for _ in range(dimension)]
        seen: dict[tuple[int, int], Vector] = {}
        for (i, j), terms in brackets.items():
            vec = zero_vector(dimension)
            for k, c in terms.items():
                vec[k] = to_exact(c)
            if i == j and any(vec):
                raise StructureError(f"[e{i + 1}, e{i + 1}] must vanish", witness=(i, i))
            if (j, i) in seen and any(a != -b for a, b in zip(seen[(j, i)], vec)):
                raise StructureError(f"inconsistent brackets for ({i},{j})", witness=(i, j))
            seen[(i, j)] = vec
            table[i][j] = vec
            table[j][i] = [-c for c in vec]
        return cls(dimension, table, tuple(names))

    @classmethod
    def abelian(cls, dimension: int, names: Sequence[str] = ()) -> LieAlgebraData:
        return cls.from_brackets(dimension, {}, names)

    def basis(self) -> list[Vector]:
        return [unit(self.dimension, i) for i in range(self.dimension)]

    def basis_bracket(self, i: int, j: int) -> Vector:
        return list(self.constants[i][j])

    def bracket(self, x: Sequence[ExactScalar], y: Sequence[ExactScalar]) -> Vector:
        out = zero_vector(self.dimension)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = add(out, scale(xi * yj, self.constants[i][j]))
        return out

    def ad(self, x: Sequence[ExactScalar]) -> list[Vector]:
        """Matrix of ad_x: column j holds [x, e_j]."""
        columns = [self.bracket(x, unit(self.dimension, j)) for j in range(self.dimension)]
        return transpose(columns) if columns else []

    def format_vector(self, v: Sequence[ExactScalar]) -> str:
        terms = [f"{c}*{name}" for c, name in zip(v, self.names) if c]
        return " + ".join(terms) or "0"


def jacobiator(L: LieAlgebraData, i: int, j: int, k: int) -> Vector:
    """[[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]."""
    e = L.basis()
    return add(
        add(L.bracket(L.basis_bracket(i, j), e[k]), L.bracket(L.basis_bracket(j, k), e[i])),
        L.bracket(L.basis_bracket(k, i), e[j]),
    )


def jacobi_check(L: LieAlgebraData) -> CheckResult:
    """Jacobi identity on every basis triple i < j < k."""
    for i, j, k in combinations(range(L.dimension), 3):
        value = jacobiator(L, i, j, k)
        if any(value):
            logger.warning("Jacobi fails on (%s, %s, %s)", L.names[i], L.names[j], L.names[k])
            return CheckResult.fail(
                (L.names[i], L.names[j], L.names[k]), value, f"jacobiator = {L.format_vector(value)}"
            )
    return CheckResult.ok(f"{L.dimension}-dimensional algebra satisfies Jacobi")


def subalgebra(L: LieAlgebraData, basis: Sequence[Sequence[ExactScalar]], names: Sequence[str] = ()) -> LieAlgebraData:
    """Structure constants of the span of ``basis``; StructureError if it is not closed."""
    m = len(basis)
    table = [[zero_vector(m) for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            coords = express(basis, L.bracket(basis[a], basis[b]))
            table[a][b] = coords
            table[b][a] = [-c for c in coords]
    return LieAlgebraData(m, table, tuple(names))


def direct_sum(L1: LieAlgebraData, L2: LieAlgebraData) -> LieAlgebraData:
    n1, n = L1.dimension, L1.dimension + L2.dimension
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            table[i][j][:n1] = L1.constants[i][j]
    for i in range(L2.dimension):
        for j in range(L2.dimension):
            table[n1 + i][n1 + j][n1:] = L2.constants[i][j]
    names = tuple(f"({a},0)" for a in L1.names) + tuple(f"(0,{b})" for b in L2.names)
    return LieAlgebraData(n, table, names)


def closed_under_bracket(L: LieAlgebraData, basis: Sequence[Sequence[ExactScalar]]) -> Optional[tuple[int, int]]:
    """First pair (a, b) whose bracket leaves span(basis), or None."""
    for a, b in combinations(range(len(basis)), 2):
        if not in_span(basis, L.bracket(basis[a], basis[b])):
            return a, b
    return None


# -----------------
# Bilinear forms
# -----------------
@dataclass(frozen=True, eq=False)
class BilinearFormData:
    matrix: tuple[tuple[ExactScalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_exact(c) for c in row) for row in self.matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise StructureError("bilinear form must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise StructureError(f"bilinear form is not symmetric at ({i},{j})", witness=(i, j))
        object.__setattr__(self, "matrix", rows)

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[ExactScalar], y: Sequence[ExactScalar]) -> ExactScalar:
        acc = QQ.zero
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj and self.matrix[i][j]:
                    acc += xi * self.matrix[i][j] * yj
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BilinearFormData):
            return NotImplemented
        return self.matrix == other.matrix

    def determinant(self) -> ExactScalar:
        if not self.dimension:
            return QQ.one
        return determinant([list(r) for r in self.matrix])

    def is_nondegenerate(self) -> bool:
        return self.determinant() != 0

    def negated(self) -> BilinearFormData:
        return BilinearFormData(tuple(tuple(-c for c in row) for row in self.matrix))

    def restricted(self, basis: Sequence[Sequence[ExactScalar]]) -> BilinearFormData:
        return BilinearFormData(tuple(tuple(self(u, v) for v in basis) for u in basis))


def orthogonal_sum(B1: BilinearFormData, B2: BilinearFormData) -> BilinearFormData:
    n1, n = B1.dimension, B1.dimension + B2.dimension
    rows = [[QQ.zero] * n for _ in range(n)]
    for i in range(n1):
        rows[i][:n1] = B1.matrix[i]
    for i in range(B2.dimension):
        rows[n1 + i][n1:] = B2.matrix[i]
    return BilinearFormData(tuple(tuple(r) for r in rows))


def killing_form(L: LieAlgebraData) -> BilinearFormData:
    """kappa(X, Y) = 2 dim(L) Tr(ad_X ad_Y)."""
    n = L.dimension
    if not n:
        return BilinearFormData(())
    ads = [to_matrix(L.ad(unit(n, i)), QQ) for i in range(n)]
    factor = QQ(2 * n)
    rows = [[factor * trace(ads[i] * ads[j]) for j in range(n)] for i in range(n)]
    return BilinearFormData(tuple(tuple(r) for r in rows))


def negative_definite_check(B: BilinearFormData) -> bool:
    """All leading principal minors of -B positive."""
    neg = B.negated().matrix
    if not neg:
        return False
    for k in range(1, len(neg) + 1):
        minor = determinant([list(row[:k]) for row in neg[:k]])
        if minor <= 0:
            return False
    return True


def ad_invariance_check(L: LieAlgebraData, B: BilinearFormData) -> CheckResult:
    """B([e_i, e_j], e_k) + B(e_j, [e_i, e_k]) = 0 on all basis triples."""
    if B.dimension != L.dimension:
        raise StructureError(f"form of dimension {B.dimension} on an algebra of dimension {L.dimension}")
    e = L.basis()
    for i in range(L.dimension):
        for j in range(L.dimension):
            for k in range(j, L.dimension):
                value = B(L.basis_bracket(i, j), e[k]) + B(e[j], L.basis_bracket(i, k))
                if value:
                    return CheckResult.fail((L.names[i], L.names[j], L.names[k]), value)
    return CheckResult.ok()


def independent(vectors: Sequence[Sequence[ExactScalar]]) -> bool:
    return rank([list(v) for v in vectors]) == len(vectors)
