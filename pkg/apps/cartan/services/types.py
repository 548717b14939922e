# FILE: apps/cartan/services/types.py
"""
Type decomposition of forms with respect to an eigenframe, the operators d+/-, the
para-Cauchy-Riemann test and the identification of para-complex forms with pairs of
real forms.
"""
from __future__ import annotations
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from sympy import QQ

from apps.cartan.services.forms import PolyForm, exterior_derivative
from apps.cartan.services.frames import EigenFrame
from apps.core.exceptions import TypeMismatchError
from apps.scalars.services.paracomplex import ParaComplexScalar, as_paracomplex

Bidegree = tuple[int, int]


# -----------------
# Type decomposition
# -----------------
def _zero_next(alpha: PolyForm) -> PolyForm:
    return PolyForm.zero(alpha.patch, min(alpha.degree + 1, alpha.patch.dimension))


def type_project(alpha: PolyForm, J: EigenFrame) -> dict[Bidegree, PolyForm]:
    """All (p, q) components of ``alpha`` (p + q = degree); they sum back to ``alpha``."""
    J.patch.check_same(alpha.patch)
    k, n, h = alpha.degree, J.patch.dimension, J.half
    parts = {(p, k - p): PolyForm.zero(alpha.patch, k) for p in range(k + 1) if p <= h and k - p <= h}
    if k == 0:
        parts[(0, 0)] = alpha
        return parts
    for A in combinations(range(n), k):
        value = alpha(*(J.frame[a] for a in A))
        if not value:
            continue
        basis = PolyForm.scalar(alpha.patch, value)
        for a in A:
            basis = basis.wedge(J.coframe[a])
        p = sum(1 for a in A if a < h)
        parts[(p, k - p)] = parts[(p, k - p)] + basis
    return parts


def types_of(alpha: PolyForm, J: EigenFrame) -> set[Bidegree]:
    """Bidegrees carrying a nonzero component; empty for the zero form."""
    return {pq for pq, part in type_project(alpha, J).items() if not part.is_zero()}


def pure_type(alpha: PolyForm, J: EigenFrame) -> Optional[Bidegree]:
    """(p, q) when ``alpha`` is nonzero and of a single type, otherwise None."""
    found = types_of(alpha, J)
    return next(iter(found)) if len(found) == 1 else None


def del_plus_minus(alpha: PolyForm, J: EigenFrame) -> tuple[PolyForm, PolyForm]:
    """(d+ alpha, d- alpha): the (p+1,q) and (p,q+1) projections of d alpha."""
    zero = _zero_next(alpha)
    if alpha.is_zero():
        return zero, zero
    pq = pure_type(alpha, J)
    if pq is None:
        raise TypeMismatchError("d+/d- need a form of homogeneous (p,q) type")
    p, q = pq
    parts = type_project(exterior_derivative(alpha), J)
    return parts.get((p + 1, q), zero), parts.get((p, q + 1), zero)


def type_leak(alpha: PolyForm, J: EigenFrame) -> PolyForm:
    """d alpha - d+ alpha - d- alpha; nonzero only for non-integrable splits."""
    plus, minus = del_plus_minus(alpha, J)
    return exterior_derivative(alpha) - plus - minus


def del_plus(alpha: PolyForm, J: EigenFrame) -> PolyForm:
    """d+ extended linearly over the type components of a mixed form."""
    out = _zero_next(alpha)
    for part in type_project(alpha, J).values():
        if not part.is_zero():
            out = out + del_plus_minus(part, J)[0]
    return out


def del_minus(alpha: PolyForm, J: EigenFrame) -> PolyForm:
    out = _zero_next(alpha)
    for part in type_project(alpha, J).values():
        if not part.is_zero():
            out = out + del_plus_minus(part, J)[1]
    return out


def para_holomorphic_check(f1, f2, J: EigenFrame) -> bool:
    """f = (1+j)/2 f1 + (1-j)/2 f2 is para-holomorphic iff d- f1 = 0 and d+ f2 = 0."""
    patch = J.patch
    _, dm_f1 = del_plus_minus(PolyForm.scalar(patch, f1), J)
    dp_f2, _ = del_plus_minus(PolyForm.scalar(patch, f2), J)
    return dm_f1.is_zero() and dp_f2.is_zero()


def kahler_potential_form(u, J: EigenFrame) -> PolyForm:
    """F = d+ d- u."""
    _, dm = del_plus_minus(PolyForm.scalar(J.patch, u), J)
    return del_plus(dm, J)


# -----------------
# Para-complex forms
# -----------------
@dataclass(frozen=True)
class ParaComplexForm:
    """re + j im with real forms of equal degree."""

    re: PolyForm
    im: PolyForm

    def __post_init__(self):
        self.re.patch.check_same(self.im.patch)

    def times(self, c: ParaComplexScalar) -> ParaComplexForm:
        c = as_paracomplex(c)
        # (a + jb)(re + j im) = (a re + b im) + j (a im + b re)
        return ParaComplexForm(
            self.re.scale(c.re) + self.im.scale(c.im),
            self.im.scale(c.re) + self.re.scale(c.im),
        )

    def __add__(self, other: ParaComplexForm) -> ParaComplexForm:
        return ParaComplexForm(self.re + other.re, self.im + other.im)


def phi_isomorphism(eta: PolyForm, eta_prime: PolyForm, J: Optional[EigenFrame] = None) -> ParaComplexForm:
    """phi(eta, eta') = (1+j)/2 eta + (1-j)/2 eta'.

    With ``J`` given, eta must be of type (p,q) and eta' of type (q,p).
    """
    eta.patch.check_same(eta_prime.patch)
    if J is not None:
        left, right = types_of(eta, J), types_of(eta_prime, J)
        mirrored = {(q, p) for p, q in left}
        if len(left) > 1 or len(right) > 1 or (left and right and right != mirrored):
            raise TypeMismatchError(f"phi needs types (p,q) and (q,p), got {sorted(left)} and {sorted(right)}")
    half = QQ(1, 2)
    return ParaComplexForm((eta + eta_prime).scale(half), (eta - eta_prime).scale(half))


def phi_inverse(omega: ParaComplexForm) -> tuple[PolyForm, PolyForm]:
    """(Re + Im, Re - Im)."""
    return omega.re + omega.im, omega.re - omega.im


def _apply_real(op, omega: ParaComplexForm, J: EigenFrame) -> ParaComplexForm:
    return ParaComplexForm(op(omega.re, J), op(omega.im, J))


def dolbeault(omega: ParaComplexForm, J: EigenFrame) -> tuple[ParaComplexForm, ParaComplexForm]:
    """(del, delbar) with del = p+ d+ + p- d-, delbar = p+ d- + p- d+."""
    p_plus = ParaComplexScalar(QQ(1, 2), QQ(1, 2))
    p_minus = ParaComplexScalar(QQ(1, 2), QQ(-1, 2))
    dp = _apply_real(del_plus, omega, J)
    dm = _apply_real(del_minus, omega, J)
    holo = dp.times(p_plus) + dm.times(p_minus)
    anti = dm.times(p_plus) + dp.times(p_minus)
    return holo, anti


def delbar(omega: ParaComplexForm, J: EigenFrame) -> ParaComplexForm:
    return dolbeault(omega, J)[1]
