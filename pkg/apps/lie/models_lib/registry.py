from __future__ import annotations
from typing import Callable, Dict

from apps.core.exceptions import UnknownNameError
from apps.lie.services.algebras import LieAlgebraData


def _abelian(dimension: int = 2) -> LieAlgebraData:
    return LieAlgebraData.abelian(dimension)


def _su2() -> LieAlgebraData:
    # [e1,e2] = e3 and cyclic
    return LieAlgebraData.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})


def _sl2r() -> LieAlgebraData:
    # [H,E] = 2E, [H,F] = -2F, [E,F] = H
    return LieAlgebraData.from_brackets(
        3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, names=("H", "E", "F")
    )


def _b2() -> LieAlgebraData:
    # [e1,e2] = e2
    return LieAlgebraData.from_brackets(2, {(0, 1): {1: 1}})


def _broken_jacobi() -> LieAlgebraData:
    # antisymmetric, but [[e1,e2],e3] + c.p. = e3
    return LieAlgebraData.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {0: 1}})


_REGISTRY: Dict[str, Callable[..., LieAlgebraData]] = {
    "abelian": _abelian,
    "su2": _su2,
    "sl2r": _sl2r,
    "b2": _b2,
    "broken-jacobi": _broken_jacobi,
}


def get_algebra(name: str, **params) -> LieAlgebraData:
    key = (name or "").lower()
    if key not in _REGISTRY:
        raise UnknownNameError("algebra", name, list(_REGISTRY))
    return _REGISTRY[key](**params)


def list_algebras() -> list[str]:
    return sorted(_REGISTRY.keys())
