# FILE: apps/scalars/services/paracomplex.py
from __future__ import annotations
from dataclasses import dataclass
from typing import Union

from sympy import QQ

from apps.scalars.services.polynomials import ExactScalar, to_exact


# -----------------
# Para-complex numbers a + jb with j*j = 1
# -----------------
@dataclass(frozen=True)
class ParaComplexScalar:
    re: ExactScalar
    im: ExactScalar = QQ(0)

    def __post_init__(self):
        object.__setattr__(self, "re", to_exact(self.re))
        object.__setattr__(self, "im", to_exact(self.im))

    def __add__(self, other: PCLike) -> ParaComplexScalar:
        o = as_paracomplex(other)
        return ParaComplexScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: PCLike) -> ParaComplexScalar:
        o = as_paracomplex(other)
        return ParaComplexScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: PCLike) -> ParaComplexScalar:
        return as_paracomplex(other) - self

    def __neg__(self) -> ParaComplexScalar:
        return ParaComplexScalar(-self.re, -self.im)

    def __mul__(self, other: PCLike) -> ParaComplexScalar:
        return pc_mul(self, as_paracomplex(other))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.re} + {self.im}j"


PCLike = Union[ParaComplexScalar, int, ExactScalar]


def as_paracomplex(value: PCLike) -> ParaComplexScalar:
    if isinstance(value, ParaComplexScalar):
        return value
    return ParaComplexScalar(to_exact(value), QQ(0))


def pc_mul(a: ParaComplexScalar, b: ParaComplexScalar) -> ParaComplexScalar:
    """(a1 + j b1)(a2 + j b2) = (a1 a2 + b1 b2) + j (a1 b2 + a2 b1)."""
    return ParaComplexScalar(a.re * b.re + a.im * b.im, a.re * b.im + a.im * b.re)


def pc_conjugate(a: ParaComplexScalar) -> ParaComplexScalar:
    return ParaComplexScalar(a.re, -a.im)


def pc_norm(a: ParaComplexScalar) -> ExactScalar:
    # a * conj(a) is real; the norm is multiplicative but may vanish off zero
    return a.re * a.re - a.im * a.im


def lightcone(a: ParaComplexScalar) -> tuple[ExactScalar, ExactScalar]:
    """Ring isomorphism C -> QQ x QQ, a + jb -> (a + b, a - b)."""
    return (a.re + a.im, a.re - a.im)


def from_lightcone(u: ExactScalar, v: ExactScalar) -> ParaComplexScalar:
    u, v = to_exact(u), to_exact(v)
    half = QQ(1, 2)
    return ParaComplexScalar(half * (u + v), half * (u - v))


ONE = ParaComplexScalar(QQ(1), QQ(0))
J = ParaComplexScalar(QQ(0), QQ(1))
# idempotents (1 + j)/2 and (1 - j)/2
P_PLUS = ParaComplexScalar(QQ(1, 2), QQ(1, 2))
P_MINUS = ParaComplexScalar(QQ(1, 2), QQ(-1, 2))
