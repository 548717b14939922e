"""Hypothesis strategies shared by the app test suites."""
from __future__ import annotations

from hypothesis import strategies as st
from sympy import QQ

from apps.scalars.services.paracomplex import ParaComplexScalar

small_ints = st.integers(min_value=-6, max_value=6)

rationals = st.builds(
    lambda n, d: QQ(n, d),
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=6),
)

paracomplex = st.builds(ParaComplexScalar, rationals, rationals)


def polynomials(ring, max_terms: int = 4, max_exp: int = 2):
    """Sparse polynomials in ``ring`` with small exponents and rational coefficients."""
    monoms = st.tuples(*[st.integers(min_value=0, max_value=max_exp)] * ring.ngens)
    return st.dictionaries(monoms, rationals, max_size=max_terms).map(ring.from_dict)
