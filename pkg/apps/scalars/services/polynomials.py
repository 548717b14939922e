# FILE: apps/scalars/services/polynomials.py
from __future__ import annotations
import logging
import re
from typing import Sequence, Union

from sympy import I, QQ, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, PolyRing

from apps.core.exceptions import CourantError, DegreeError

logger = logging.getLogger(__name__)

# Exact scalars are elements of sympy's rational ground domain QQ.
ExactScalar = type(QQ.one)
# Polynomials are sparse sympy ring elements over QQ: {exponent tuple: coefficient}.
Polynomial = PolyElement

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
# "2i" -> "2*i"
_IMAGINARY = re.compile(r"(\d)\s*(?=i\b)")


# -----------------
# Scalars
# -----------------
def to_exact(value: Union[int, str, ExactScalar]) -> ExactScalar:
    """Coerce ints, "p/q" strings and QQ elements to an exact rational."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool) or isinstance(value, float):
        raise CourantError(f"refusing inexact scalar {value!r}")
    try:
        return QQ.convert(value)
    except CoercionFailed as exc:
        raise CourantError(f"cannot read {value!r} as an exact rational") from exc


def parse_rational(text: str) -> ExactScalar:
    m = _RATIONAL.match(text)
    if not m:
        raise CourantError(f"expected a rational 'p/q', got {text!r}")
    num = int(m.group(1))
    den = int(m.group(2) or 1)
    if den == 0:
        raise CourantError(f"zero denominator in {text!r}")
    return QQ(num, den)


def format_rational(value: ExactScalar) -> str:
    value = QQ.convert(value)
    num, den = int(QQ.numer(value)), int(QQ.denom(value))
    return str(num) if den == 1 else f"{num}/{den}"


def parse_gaussian(text: str) -> tuple[ExactScalar, ExactScalar]:
    """Read ``"a+bi"`` style text (``i`` the imaginary unit) as an exact (re, im) pair."""
    try:
        expr = sympify(_IMAGINARY.sub(r"\1*", text), locals={"i": I})
    except (SympifyError, TypeError) as exc:
        raise CourantError(f"cannot parse complex rational {text!r}") from exc
    parts = expr.as_real_imag()
    if expr.free_symbols or not all(p.is_Rational for p in parts):
        raise CourantError(f"expected an exact complex rational like '1/2-3i', got {text!r}")
    return QQ.convert(parts[0]), QQ.convert(parts[1])


# -----------------
# Polynomial rings
# -----------------
def polynomial_ring(names: Sequence[str]) -> PolyRing:
    if not names:
        raise DegreeError("a coordinate patch needs at least one variable")
    return PolyRing(",".join(names), QQ)


def poly_partial(p: Polynomial, index: int) -> Polynomial:
    """Exact formal partial derivative with respect to the ``index``-th variable."""
    ngens = p.ring.ngens
    if not isinstance(index, int) or not 0 <= index < ngens:
        raise DegreeError(f"variable index {index} out of range for {ngens} variables")
    return p.diff(index)


def total_degree(p: Polynomial) -> int:
    """Total degree; -1 for the zero polynomial."""
    if not p:
        return -1
    return max(sum(monom) for monom in p.itermonoms())


def is_constant(p: Polynomial) -> bool:
    return p.is_ground


def constant_value(p: Polynomial) -> ExactScalar:
    if not p.is_ground:
        raise CourantError(f"{p} is not constant")
    return p.const()


def monomials_up_to(ring: PolyRing, degree: int) -> list[Polynomial]:
    """All monic monomials of total degree <= ``degree``, in a fixed order."""
    out = [ring.one]
    frontier = [ring.zero_monom]
    for _ in range(degree):
        nxt = []
        for monom in frontier:
            for i in range(ring.ngens):
                m = list(monom)
                m[i] += 1
                m = tuple(m)
                if m not in nxt:
                    nxt.append(m)
        out.extend(ring.term_new(m, QQ(1)) for m in nxt)
        frontier = nxt
    return out


# -----------------
# Text form
# -----------------
def parse_polynomial(text: Union[str, int], ring: PolyRing) -> Polynomial:
    """Parse sympy syntax such as ``"x*y - 1/2*z**2"`` into ``ring``."""
    if isinstance(text, int):
        return ring(text)
    try:
        expr = sympify(text, locals={str(s): s for s in ring.symbols})
    except (SympifyError, TypeError) as exc:
        raise CourantError(f"cannot parse polynomial {text!r}") from exc
    unknown = {str(s) for s in expr.free_symbols} - {str(s) for s in ring.symbols}
    if unknown:
        raise CourantError(f"unknown variables {sorted(unknown)} in {text!r}")
    try:
        return ring.from_expr(expr)
    except ValueError as exc:
        raise CourantError(f"{text!r} is not a polynomial in {ring.symbols}") from exc


def format_polynomial(p: Polynomial) -> str:
    return str(p.as_expr()) if p else "0"
