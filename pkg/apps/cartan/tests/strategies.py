"""Hypothesis strategies for forms, multivectors and vector fields."""
from __future__ import annotations
from itertools import combinations

from hypothesis import strategies as st

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.multivectors import PolyMultivector
from apps.cartan.services.patch import Patch
from apps.core.tests.strategies import polynomials


def _alternating(cls, patch: Patch, degree: int, max_terms: int):
    keys = list(combinations(range(patch.dimension), degree))
    return st.dictionaries(
        st.sampled_from(keys), polynomials(patch.ring, max_terms=2), max_size=max_terms
    ).map(lambda coeffs: cls(patch, degree, coeffs))


def forms(patch: Patch, degree: int, max_terms: int = 3):
    return _alternating(PolyForm, patch, degree, max_terms)


def multivectors(patch: Patch, degree: int, max_terms: int = 2):
    return _alternating(PolyMultivector, patch, degree, max_terms)


def vector_fields(patch: Patch):
    return st.tuples(*[polynomials(patch.ring, max_terms=2)] * patch.dimension).map(
        lambda comps: PolyVectorField(patch, comps)
    )
