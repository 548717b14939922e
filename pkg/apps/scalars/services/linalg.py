# FILE: apps/scalars/services/linalg.py
"""
Exact linear algebra on top of sympy's DomainMatrix.

Rows are plain lists of domain elements: QQ rationals for Lie-algebra data, ring
polynomials for sections over a patch. Rank and span questions over a polynomial ring
are answered over its fraction field; inverses of frames are required to stay
polynomial, which is guaranteed when the determinant is a nonzero constant.
"""
from __future__ import annotations
from typing import Any, Optional, Sequence

from sympy import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from apps.core.exceptions import FrameError, StructureError

Row = Sequence[Any]


def domain_of(ring=None) -> Domain:
    """QQ when ``ring`` is None, else the polynomial-ring domain of a patch."""
    return QQ if ring is None else ring.to_domain()


def to_matrix(rows: Sequence[Row], domain: Domain, ncols: Optional[int] = None) -> DomainMatrix:
    if not rows:
        return DomainMatrix.zeros((0, ncols or 0), domain)
    return DomainMatrix.from_list([list(r) for r in rows], domain)


def rank(rows: Sequence[Row], domain: Domain = QQ) -> int:
    if not rows or not len(rows[0]):
        return 0
    return to_matrix(rows, domain).to_field().rank()


def in_span(rows: Sequence[Row], vector: Row, domain: Domain = QQ) -> bool:
    """True iff ``vector`` lies in the span of ``rows`` (over the fraction field)."""
    if not rows:
        return all(not v for v in vector)
    return rank(list(rows) + [vector], domain) == rank(rows, domain)


def determinant(rows: Sequence[Row], domain: Domain = QQ):
    return to_matrix(rows, domain).det()


def inverse(rows: Sequence[Row], domain: Domain = QQ) -> list[list[Any]]:
    """Inverse of a square matrix.

    Over QQ any nonsingular matrix is accepted. Over a polynomial ring the determinant
    must be a nonzero constant, otherwise ``FrameError`` is raised.
    """
    m = to_matrix(rows, domain)
    if domain == QQ:
        try:
            return m.inv().to_list()
        except DMNonInvertibleMatrixError as exc:
            raise FrameError("matrix is singular") from exc
    adj, det = m.adj_det()
    if not det or not det.is_ground:
        raise FrameError(f"frame determinant {det} is not a nonzero constant")
    scale = QQ.one / det.const()
    return [[entry * scale for entry in row] for row in adj.to_list()]


def coordinates(frame_inverse: Sequence[Row], vector: Row) -> list[Any]:
    """Coefficients c with vector = sum_i c_i * frame[i], given the inverse of ``frame``."""
    n = len(frame_inverse)
    out = []
    for j in range(n):
        acc = vector[0] * frame_inverse[0][j]
        for i in range(1, n):
            acc = acc + vector[i] * frame_inverse[i][j]
        out.append(acc)
    return out


def solve(rows: Sequence[Row], rhs: Row) -> list[Any]:
    """Unique solution x of rows . x = rhs over QQ."""
    m = to_matrix(rows, QQ)
    b = DomainMatrix.from_list([[v] for v in rhs], QQ)
    try:
        x = m.to_dense().lu_solve(b.to_dense())
    except (DMNonInvertibleMatrixError, NotImplementedError) as exc:
        raise StructureError("linear system has no unique solution") from exc
    return [row[0] for row in x.to_list()]


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Any]]:
    """Basis of {x : rows . x = 0} over QQ."""
    if not rows:
        return [[QQ.one if i == j else QQ.zero for i in range(ncols)] for j in range(ncols)]
    return to_matrix(rows, QQ).nullspace().to_list()


def transpose(rows: Sequence[Row]) -> list[list[Any]]:
    return [list(col) for col in zip(*rows)]


def trace(m: DomainMatrix):
    acc = m.domain.zero
    for entry in m.diagonal():
        acc = acc + entry
    return acc
