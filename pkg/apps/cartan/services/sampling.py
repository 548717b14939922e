# FILE: apps/cartan/services/sampling.py
from __future__ import annotations
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from sympy import QQ

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.patch import Patch
from apps.scalars.services.polynomials import Polynomial


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_rational(rng: np.random.Generator, bound: int = 5) -> QQ:
    num = int(rng.integers(-bound, bound + 1))
    den = int(rng.integers(1, 4))
    return QQ(num, den)


def random_polynomial(patch: Patch, rng: np.random.Generator, degree: int = 2, terms: int = 3) -> Polynomial:
    out = {}
    for _ in range(terms):
        monom = [0] * patch.dimension
        for _ in range(int(rng.integers(0, degree + 1))):
            monom[int(rng.integers(0, patch.dimension))] += 1
        out[tuple(monom)] = random_rational(rng)
    return patch.ring.from_dict(out)


def random_vector_field(patch: Patch, rng: np.random.Generator, degree: int = 2) -> PolyVectorField:
    return PolyVectorField(
        patch, tuple(random_polynomial(patch, rng, degree, terms=2) for _ in range(patch.dimension))
    )


def random_form(
    patch: Patch,
    rng: np.random.Generator,
    degree: int,
    poly_degree: int = 2,
    allowed: Optional[Sequence[tuple[int, ...]]] = None,
) -> PolyForm:
    """Random form; ``allowed`` restricts the basis index tuples that may appear."""
    basis = list(allowed) if allowed is not None else list(combinations(range(patch.dimension), degree))
    coeffs = {}
    for idx in basis:
        if rng.random() < 0.6:
            coeffs[idx] = random_polynomial(patch, rng, poly_degree, terms=2)
    return PolyForm(patch, degree, coeffs)


def split_basis(plus: Sequence[int], minus: Sequence[int], p: int, q: int) -> list[tuple[int, ...]]:
    """Coordinate index tuples of type (p, q) for a coordinate split."""
    return [
        tuple(sorted(a + b)) for a in combinations(plus, p) for b in combinations(minus, q)
    ]
