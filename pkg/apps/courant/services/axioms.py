# FILE: apps/courant/services/axioms.py
"""
Courant axioms over a generated section family, and Dirac structures.

Residuals (each must vanish):

1. Jac(e1, e2, e3) - d_E T(e1, e2, e3),  T = 1/6 (<[e1,e2], e3> + c.p.)
2. rho([e1, e2]) g - [rho e1, rho e2] g           for g a coordinate function
3. [e1, f e2] - f [e1, e2] - rho(e1)(f) e2 + 1/2 <e1, e2> d_E f
4. rho(d_E f) g
5. <[e1,e2] + 1/2 d_E<e1,e2>, e3> + <e2, [e1,e3] + 1/2 d_E<e1,e3>> - rho(e1)<e2, e3>

Both models (patch and constant-section) expose the same interface, so every check
here runs on either.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Any, Optional, Sequence

from sympy import QQ

from apps.core.exceptions import StructureError
from apps.core.results import CheckResult
from apps.courant.services.sections import SectionFamily
from apps.scalars.services import linalg

logger = logging.getLogger(__name__)

HALF = QQ(1, 2)
SIXTH = QQ(1, 6)

AXIOMS = ("antisymmetry", "axiom1", "axiom2", "axiom3", "axiom4", "axiom5")


# -----------------
# Residuals
# -----------------
def jacobiator(E, e1, e2, e3):
    """[[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2]."""
    return E.bracket(E.bracket(e1, e2), e3) + E.bracket(E.bracket(e2, e3), e1) + E.bracket(E.bracket(e3, e1), e2)


def jacobi_defect(E, e1, e2, e3):
    """Jac - d_E T; zero in a Courant algebroid."""
    b12, b23, b31 = E.bracket(e1, e2), E.bracket(e2, e3), E.bracket(e3, e1)
    jac = E.bracket(b12, e3) + E.bracket(b23, e1) + E.bracket(b31, e2)
    T = (E.pair(b12, e3) + E.pair(b23, e1) + E.pair(b31, e2)) * SIXTH
    return jac - E.d_E(T)


def anchor_defect(E, e1, e2, g):
    return E.rho_apply(E.bracket(e1, e2), g) - (
        E.rho_apply(e1, E.rho_apply(e2, g)) - E.rho_apply(e2, E.rho_apply(e1, g))
    )


def leibniz_defect(E, e1, e2, f):
    lhs = E.bracket(e1, e2.scale(f))
    rhs = E.bracket(e1, e2).scale(f) + e2.scale(E.rho_apply(e1, f)) - E.d_E(f).scale(E.pair(e1, e2) * HALF)
    return lhs - rhs


def axiom5_residual(E, e1, e2, e3):
    lhs = E.rho_apply(e1, E.pair(e2, e3))
    left = E.bracket(e1, e2) + E.d_E(E.pair(e1, e2)).scale(HALF)
    right = E.bracket(e1, e3) + E.d_E(E.pair(e1, e3)).scale(HALF)
    return E.pair(left, e3) + E.pair(e2, right) - lhs


# -----------------
# Report
# -----------------
@dataclass
class AxiomReport:
    results: dict[str, CheckResult]
    checked: dict[str, int] = field(default_factory=dict)
    mode: str = ""

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[str]:
        return [name for name, result in self.results.items() if not result]

    def as_dict(self) -> dict[str, Any]:
        out = {}
        for name, result in self.results.items():
            out[name] = {
                "passed": result.passed,
                "witness": list(result.witness) if isinstance(result.witness, tuple) else result.witness,
                "checked": self.checked.get(name, 0),
            }
        return out


class _BracketCache:
    """Brackets of family members, keyed by position in the family."""

    def __init__(self, E, sections: Sequence):
        self.E = E
        self.index = {id(s): i for i, s in enumerate(sections)}
        self.values: dict[tuple[int, int], Any] = {}

    def __call__(self, a, b):
        key = (self.index.get(id(a)), self.index.get(id(b)))
        if None in key:
            return self.E.bracket(a, b)
        if key not in self.values:
            self.values[key] = self.E.bracket(a, b)
        return self.values[key]


class _CachedModel:
    """Proxy that routes family brackets through the cache."""

    def __init__(self, E, cache: _BracketCache):
        self._E = E
        self.bracket = cache

    def __getattr__(self, name):
        return getattr(self._E, name)


def _consecutive(items: Sequence, size: int) -> list[tuple]:
    return [tuple(items[i:i + size]) for i in range(0, len(items) - size + 1)]


def _triples(family: SectionFamily) -> list[tuple]:
    frame, scaled = family.frame, family.scaled
    out = list(combinations(frame, 3))
    out += [(a, b, s) for a, b in combinations(frame, 2) for s in scaled]
    out += _consecutive(family.random, 3)
    return out


def _pairs(family: SectionFamily) -> list[tuple]:
    frame, scaled = family.frame, family.scaled
    out = list(combinations(frame, 2))
    out += [(a, s) for a in frame for s in scaled]
    out += _consecutive(family.random, 2)
    return out


def _ordered_pairs(family: SectionFamily) -> list[tuple]:
    return list(product(family.frame, repeat=2)) + _consecutive(family.random, 2)


def _axiom5_triples(family: SectionFamily) -> list[tuple]:
    frame, scaled = family.frame, family.scaled
    out = [(e1, e2, e3) for e1 in frame + scaled for e2, e3 in combinations_with_replacement(frame, 2)]
    out += [(e1, s, e3) for e1 in frame for s in scaled for e3 in frame]
    out += _consecutive(family.random, 3)
    return out


def axiom_check(E, family: Optional[SectionFamily] = None) -> AxiomReport:
    """Evaluate antisymmetry and axioms 1-5 on the family; failures carry labelled witnesses."""
    family = family if family is not None else E.family()
    if not len(family):
        raise StructureError("empty section family")
    sections = family.frame + family.scaled + family.random
    cached = _CachedModel(E, _BracketCache(E, sections))

    def label(args):
        return tuple(family.label(a) for a in args)

    def function_label(args):
        *sections_, f = args
        return tuple(family.label(s) for s in sections_) + (str(f),)

    results, checked = {}, {}
    pairs = _pairs(family)
    results["antisymmetry"], checked["antisymmetry"] = _nonzero_sections(
        pairs, lambda a, b: cached.bracket(a, b) + cached.bracket(b, a), label
    )
    results["axiom1"], checked["axiom1"] = _nonzero_sections(
        _triples(family), lambda a, b, c: jacobi_defect(cached, a, b, c), label
    )
    coords = E.coordinate_functions()
    results["axiom2"], checked["axiom2"] = _nonzero_scalars(
        [(a, b, g) for a, b in pairs for g in coords], lambda a, b, g: anchor_defect(cached, a, b, g), function_label
    )
    results["axiom3"], checked["axiom3"] = _nonzero_sections(
        [(a, b, f) for a, b in _ordered_pairs(family) for f in family.functions],
        lambda a, b, f: leibniz_defect(cached, a, b, f),
        function_label,
    )
    results["axiom4"], checked["axiom4"] = _nonzero_scalars(
        [(f, g) for f in family.functions for g in coords],
        lambda f, g: E.rho_apply(E.d_E(f), g),
        lambda args: (str(args[0]), str(args[1])),
    )
    results["axiom5"], checked["axiom5"] = _nonzero_scalars(
        _axiom5_triples(family), lambda a, b, c: axiom5_residual(cached, a, b, c), label
    )
    report = AxiomReport(results, checked, getattr(E, "mode", ""))
    for name in report.failures():
        logger.info("%s fails (%s) at %s", name, report.mode, results[name].witness)
    return report


def _nonzero_sections(items, residual, label) -> tuple[CheckResult, int]:
    count = 0
    for args in items:
        count += 1
        value = residual(*args)
        if not value.is_zero():
            return CheckResult.fail(label(args), str(value)), count
    return CheckResult.ok(f"{count} tuples"), count


def _nonzero_scalars(items, residual, label) -> tuple[CheckResult, int]:
    count = 0
    for args in items:
        count += 1
        value = residual(*args)
        if value:
            return CheckResult.fail(label(args), str(value)), count
    return CheckResult.ok(f"{count} tuples"), count


# -----------------
# Dirac structures
# -----------------
def dirac_check(E, generators: Sequence, labels: Optional[Sequence[str]] = None) -> CheckResult:
    """Maximally isotropic and closed under the bracket.

    Closure is tested by rank over the fraction field of the coefficient ring. The value
    of a failing result lists every pair whose bracket leaves the span.
    """
    labels = list(labels) if labels is not None else [f"g{i + 1}" for i in range(len(generators))]
    rows = [E.components(g) for g in generators]
    if linalg.rank(rows, E.domain) != len(rows):
        raise StructureError("dependent generators", witness=labels)
    if len(rows) != E.rank // 2:
        return CheckResult.fail("rank", len(rows), f"rank {len(rows)}, expected {E.rank // 2}")
    for i, j in combinations_with_replacement(range(len(generators)), 2):
        if E.pair(generators[i], generators[j]):
            return CheckResult.fail(("pairing", labels[i], labels[j]), str(E.pair(generators[i], generators[j])))
    escaping = []
    for i, j in combinations(range(len(generators)), 2):
        image = E.bracket(generators[i], generators[j])
        if not linalg.in_span(rows, E.components(image), E.domain):
            escaping.append((labels[i], labels[j]))
    if escaping:
        logger.debug("bracket leaves the span on %s", escaping)
        return CheckResult.fail(escaping[0], escaping, "not closed under the bracket")
    return CheckResult.ok("Dirac")
