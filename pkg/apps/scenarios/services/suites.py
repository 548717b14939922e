# FILE: apps/scenarios/services/suites.py
"""
Named check suites.

A suite maps one scenario to a sequence of ``(check id, CheckResult)`` pairs by calling
the cartan, lie and courant services. Checks never raise on a failing property; a
CourantError escaping a suite means the construction data could not be evaluated and
is reported by the runner.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import TYPE_CHECKING, Callable, Iterator, Optional

from sympy import QQ

from apps.cartan.services.fields import lie_bracket_vf
from apps.cartan.services.forms import exterior_derivative, interior_product, lie_derivative
from apps.cartan.services.frames import (
    involutivity, metric_fundamental_form, nijenhuis_tm, nijenhuis_vanishes,
    para_hermitian_metric_check, para_kahler_check,
)
from apps.cartan.services.multivectors import schouten_bracket
from apps.cartan.services.sampling import make_rng, random_form, random_polynomial, split_basis
from apps.cartan.services.types import (
    del_minus, del_plus, dolbeault, kahler_potential_form, phi_inverse, phi_isomorphism, pure_type,
)
from apps.core.exceptions import UnknownNameError
from apps.core.results import CheckResult
from apps.courant.services.algebroids import (
    AlgebroidData, AlgebroidForm, bialgebroid_derivation_check, lie_algebroid_d, para_kahler_pde_check,
)
from apps.courant.services.axioms import axiom_check, dirac_check
from apps.courant.services.connections import (
    ConnectionMap, connection_check, curvature, decomposition_check, flatness_check,
    para_complex_connection_check, split_check, standard_K,
)
from apps.courant.services.models import CourantPatchModel, exactness_check
from apps.courant.services.morphisms import BundleMap, morphism_check
from apps.courant.services.para import (
    FundamentalForm, bivector_pi, bivector_rank_law, compatibility_check, integrability,
    isotropy_check, local_bialgebroid_data, nijenhuis_tensorial_check,
    nijenhuis_vanishes_on_frame, obstruction_closed_check, obstruction_cyclic_check,
    obstruction_forms, para_holomorphic_anchor_check,
)
from apps.courant.services.sections import ConstantSection
from apps.lie.services.algebras import (
    ad_invariance_check, independent, jacobi_check, killing_form, negative_definite_check, unit,
)
from apps.lie.services.bialgebras import (
    bialgebra_check, bialgebra_from_manin_triple, canonical_pairing, double_algebra, double_bracket,
    manin_double_agreement, r_matrix, r_matrix_coboundary_check,
)
from apps.lie.services.iwasawa import (
    complex_matrix, iwasawa_decompose, iwasawa_membership_check, minus_im_killing,
)
from apps.lie.services.quadratic import (
    QuadraticLieAlgebra, lagrangian_check, manin_para_structure, manin_triple_check, quadratic_double,
)
from apps.scalars.services.paracomplex import pc_mul
from apps.scalars.services.polynomials import poly_partial

if TYPE_CHECKING:
    from apps.scenarios.pipelines.loader import Scenario
    from apps.scenarios.services.runner import RunConfig

logger = logging.getLogger(__name__)

Checks = Iterator[tuple[str, CheckResult]]

PATCH = "patch-model"
CONSTANT = "constant-model"
LIE = "lie-structure"


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    kinds: tuple[str, ...]
    run: Callable[["Scenario", "RunConfig"], Checks]
    requires: tuple[str, ...] = ()
    description: str = ""

    def unsupported(self, scenario: "Scenario") -> Optional[str]:
        """Why ``scenario`` cannot run this suite, or None."""
        if scenario.kind not in self.kinds:
            return f"suite '{self.name}' does not run on {scenario.kind} scenarios"
        missing = [name for name in self.requires if not _present(getattr(scenario, name))]
        if missing:
            return f"suite '{self.name}' needs construction data: {', '.join(missing)}"
        return None


def _present(value) -> bool:
    return value is not None and value is not False and value != ()


def _verdict(passed: bool, value=None, witness=None, detail: str = "") -> CheckResult:
    return CheckResult(bool(passed), None if passed else witness, value, detail)


def _equal(got, expect, witness) -> CheckResult:
    if got == expect:
        return CheckResult.ok(value=got)
    return CheckResult.fail(witness, got, f"expected {expect}")


# -----------------
# Scalars and Cartan calculus
# -----------------
_CALCULUS: dict[str, Callable] = {
    "paracomplex-product": pc_mul,
    "partial": poly_partial,
    "d": exterior_derivative,
    "interior": interior_product,
    "lie-bracket": lie_bracket_vf,
    "lie-derivative": lie_derivative,
    "schouten": schouten_bracket,
    "del-plus": del_plus,
    "del-minus": del_minus,
    "phi": phi_isomorphism,
    "phi-inverse": phi_inverse,
}


def _calculus(s: "Scenario", config: "RunConfig") -> Checks:
    for spec in s.calculus:
        if spec.op == "metric-connection":
            yield spec.label, connection_check(s.model, *spec.operands)
            continue
        yield spec.label, _equal(_CALCULUS[spec.op](*spec.operands), spec.expect, spec.label)


# -----------------
# Courant models
# -----------------
def _courant_axioms(s: "Scenario", config: "RunConfig") -> Checks:
    E = s.model
    family = E.family(config.degree, config.seed, config.random_sections)
    logger.debug("%s: family of %d sections", s.name, len(family))
    report = axiom_check(E, family)
    for name, result in report.results.items():
        yield name, result
    if isinstance(E, CourantPatchModel):
        yield "exact", exactness_check(E)


def _brackets(s: "Scenario", config: "RunConfig") -> Checks:
    for i, (left, right, expect) in enumerate(s.brackets):
        yield str(i), _equal(s.model.bracket(left, right), expect, ("bracket", i))


def _dirac(s: "Scenario", config: "RunConfig") -> Checks:
    E = s.model
    for spec in s.dirac:
        result = dirac_check(E, spec.generators, spec.labels)
        yield spec.label, result
        if spec.omega is None:
            continue
        closed = exterior_derivative(spec.omega).is_zero()
        yield f"{spec.label}.closedness", _verdict(
            result.passed == closed, {"dirac": result.passed, "closed": closed}, spec.label,
            "bracket-closed graph exactly when the form is closed",
        )
        A = ConnectionMap.graph(s.patch, spec.omega)
        for i, (X, Y, expect) in enumerate(spec.curvature):
            yield f"{spec.label}.curvature.{i}", _equal(curvature(E, A, X, Y), expect, ("curvature", i))


# -----------------
# Para-complex structures
# -----------------
def _para(s: "Scenario", config: "RunConfig") -> Checks:
    E, J = s.model, s.structure
    yield "isotropic", isotropy_check(E, J)
    compatible = compatibility_check(J)
    yield "compatible", compatible
    report = integrability(E, J)
    witness = (J.labels[report.witness[0]], J.labels[report.witness[1]]) if report.witness else None
    yield "integrable", _verdict(report.plus and report.minus, {"plus": report.plus, "minus": report.minus}, witness)
    if compatible:
        yield "fundamental-form", CheckResult.ok(value=FundamentalForm(J).coefficients())
    else:
        yield "fundamental-form", CheckResult.fail(compatible.witness, detail="J is not compatible with the pairing")
    if s.tangent is not None and isinstance(E, CourantPatchModel):
        yield "anchor", para_holomorphic_anchor_check(E, J, s.tangent)


def _test_function(patch):
    x = patch.coordinates
    return x[0] * x[-1] + x[min(1, len(x) - 1)]


def _nijenhuis(s: "Scenario", config: "RunConfig") -> Checks:
    E, J, J_TM = s.model, s.structure, s.tangent
    on_frame = nijenhuis_vanishes_on_frame(J)
    yield "frame", on_frame
    if J_TM is not None:
        for i, (X, Y, expect) in enumerate(s.nijenhuis):
            yield f"tangent.{i}", _equal(nijenhuis_tm(J_TM, X, Y), expect, ("nijenhuis", i))
        vanishes, integrable = nijenhuis_vanishes(J_TM), involutivity(J_TM).integrable
        yield "equivalence", _verdict(
            vanishes == integrable, {"vanishes": vanishes, "integrable": integrable}, "TM",
        )
    report = integrability(E, J)
    closed = report.plus and report.minus
    yield "courant-equivalence", _verdict(
        on_frame.passed == closed, {"vanishes": on_frame.passed, "integrable": closed}, "E",
    )
    forms = obstruction_forms(E, J)
    yield "obstruction", _verdict(forms.is_zero(), {"phi": forms.phi, "psi": forms.psi}, "phi" if not forms.phi.is_zero() else "psi")
    yield "cyclic", obstruction_cyclic_check(E, J)
    yield "closed", obstruction_closed_check(E, J)
    f = _test_function(s.patch)
    yield "tensorial", nijenhuis_tensorial_check(J, J.plus[0] + J.minus[-1], J.plus[-1], f)


def _bivector(s: "Scenario", config: "RunConfig") -> Checks:
    E, J = s.model, s.structure
    pi, half_square = bivector_pi(E, J)
    yield "pi", CheckResult.ok("zero" if pi.is_zero() else "nonzero", value=pi)
    yield "half-square", _verdict(half_square.is_zero(), half_square, "[pi,pi]")
    yield "rank-law", bivector_rank_law(E, J)


# -----------------
# Para-Kahler structures and connections
# -----------------
def _kahler(s: "Scenario", config: "RunConfig") -> Checks:
    E, J, J_TM, g, omega = s.model, s.structure, s.tangent, s.metric, s.connection
    compatible, witness = para_hermitian_metric_check(g, J_TM)
    yield "metric", _verdict(compatible, witness=witness)
    yield "closed", _verdict(para_kahler_check(g, J_TM), witness="d omega")
    fundamental = metric_fundamental_form(g, J_TM)
    yield "graph-is-fundamental-form", _equal(omega, fundamental, "omega")
    A = ConnectionMap.graph(s.patch, omega)
    connection = connection_check(E, A)
    yield "connection", connection
    if not connection:
        return
    yield "flat", flatness_check(E, A)
    yield "para-complex", para_complex_connection_check(E, A, J, J_TM)
    yield "anchor", para_holomorphic_anchor_check(E, J, J_TM)
    yield "split", split_check(E, J, standard_K(E, A))
    yield "decomposition", decomposition_check(E, J, A, J_TM)
    yield "rank", _verdict(E.rank % 4 == 0, E.rank, "rank")
    residual = para_kahler_pde_check(local_bialgebroid_data(J), FundamentalForm(J).coefficients())
    yield "pde", _verdict(
        residual.cartan_vanishes and not residual.discrepancy,
        {"printed": residual.printed_vanishes, "cartan": residual.cartan_vanishes},
        "d omega",
    )


def _types(s: "Scenario", config: "RunConfig") -> Checks:
    J, patch = s.tangent, s.patch
    plus = [patch.index(name) for name in s.tangent_plus]
    minus = [i for i in range(patch.dimension) if i not in plus]
    h = len(plus)
    rng = make_rng(config.seed)
    samples = config.random_sections

    diagram = CheckResult.ok(f"{samples} pairs", value=samples)
    for i in range(samples):
        p, q = int(rng.integers(0, h + 1)), int(rng.integers(0, h + 1))
        eta = random_form(patch, rng, p + q, config.degree, allowed=split_basis(plus, minus, p, q))
        eta_prime = random_form(patch, rng, p + q, config.degree, allowed=split_basis(plus, minus, q, p))
        omega = phi_isomorphism(eta, eta_prime, J)
        _, anti = dolbeault(omega, J)
        expected = phi_isomorphism(del_minus(eta, J), del_plus(eta_prime, J))
        if phi_inverse(omega) != (eta, eta_prime) or (anti.re, anti.im) != (expected.re, expected.im):
            diagram = CheckResult.fail(i, detail=f"bidegree ({p},{q})")
            break
    yield "phi-diagram", diagram

    d_squared = CheckResult.ok(f"{samples} forms", value=samples)
    del_squared = CheckResult.ok(f"{samples} forms", value=samples)
    for i in range(samples):
        alpha = random_form(patch, rng, int(rng.integers(0, patch.dimension - 1)), config.degree)
        if d_squared and not exterior_derivative(exterior_derivative(alpha)).is_zero():
            d_squared = CheckResult.fail(i, detail=str(alpha))
        if del_squared:
            for label, value in (
                ("d+d+", del_plus(del_plus(alpha, J), J)),
                ("d-d-", del_minus(del_minus(alpha, J), J)),
                ("d+d- + d-d+", del_plus(del_minus(alpha, J), J) + del_minus(del_plus(alpha, J), J)),
            ):
                if not value.is_zero():
                    del_squared = CheckResult.fail((i, label), detail=str(alpha))
                    break
    yield "d-squared", d_squared
    yield "del-squared", del_squared

    potential = CheckResult.ok(f"{samples} potentials", value=samples)
    for i in range(samples):
        u = random_polynomial(patch, rng, config.degree + 2, terms=3)
        F = kahler_potential_form(u, J)
        if not exterior_derivative(F).is_zero() or (not F.is_zero() and pure_type(F, J) != (1, 1)):
            potential = CheckResult.fail(i, detail=str(u))
            break
    yield "kahler-potential", potential


# -----------------
# Lie bialgebras and doubles
# -----------------
def _double(s: "Scenario", config: "RunConfig") -> Checks:
    E = s.model
    bi = E.bialgebra
    n, m = bi.dimension, E.rank
    yield "bialgebra", bialgebra_check(bi)
    D = double_algebra(bi)
    yield "jacobi", jacobi_check(D)
    yield "pairing-invariant", ad_invariance_check(D, canonical_pairing(n))
    agreement = CheckResult.ok(f"{m * (m - 1) // 2} pairs")
    frame, labels = E.frame(), E.frame_labels()
    for a, b in combinations(range(m), 2):
        got = E.bracket(frame[a], frame[b])
        if got != ConstantSection(tuple(double_bracket(bi, unit(m, a), unit(m, b)))):
            agreement = CheckResult.fail((labels[a], labels[b]), got)
            break
    yield "agreement", agreement
    yield "derivation", bialgebroid_derivation_check(bi)
    Lam = r_matrix(bi)
    yield "r-matrix", r_matrix_coboundary_check(bi, Lam)
    half_e1 = [QQ(1, 2) if a == 0 else QQ.zero for a in range(m)]
    yield "r-matrix-contraction", _equal(Lam.sharp(unit(m, n)), half_e1, "eps1")
    yield "d-epsilon", _d_epsilon(bi.k)


def _d_epsilon(k) -> CheckResult:
    """d eps^c on k as an algebroid over a point, against -eps^c([e_a, e_b])."""
    data = AlgebroidData.from_lie_algebra(k)
    values, witness = {}, None
    for c in range(k.dimension):
        d_eps = lie_algebroid_d(data, AlgebroidForm(data, 1, {(c,): 1}))
        values[f"eps{c + 1}"] = d_eps
        for a, b in combinations(range(k.dimension), 2):
            if witness is None and d_eps.value(a, b) != -k.constants[a][b][c]:
                witness = (f"eps{c + 1}", k.names[a], k.names[b])
    return _verdict(witness is None, values, witness, "d eps^c(e_a, e_b) = -eps^c([e_a, e_b])")


def _lie(s: "Scenario", config: "RunConfig") -> Checks:
    L = s.algebra
    yield "jacobi", jacobi_check(L)
    B = killing_form(L)
    nondegenerate = B.is_nondegenerate()
    yield "killing", _verdict(
        nondegenerate,
        {"matrix": B.matrix, "negative_definite": negative_definite_check(B), "nondegenerate": nondegenerate},
        "det",
    )
    yield "ad-invariance", ad_invariance_check(L, B)


def _random_traceless(n: int, rng):
    entries = [[(int(rng.integers(-9, 10)), int(rng.integers(-9, 10))) for _ in range(n)] for _ in range(n)]
    entries[n - 1][n - 1] = (
        -sum(entries[k][k][0] for k in range(n - 1)),
        -sum(entries[k][k][1] for k in range(n - 1)),
    )
    return complex_matrix(entries)


def _manin_triple(s: "Scenario", config: "RunConfig") -> Checks:
    A = s.iwasawa
    rng = make_rng(config.seed)
    round_trip = CheckResult.ok(f"{s.samples} matrices", value=s.samples)
    for i in range(s.samples):
        X = _random_traceless(A.n, rng)
        parts = iwasawa_decompose(A, X)
        if (parts.k + parts.a + parts.n).to_list() != X.to_list() or not iwasawa_membership_check(A, parts):
            round_trip = CheckResult.fail(i, detail=str(X.to_list()))
            break
    yield "round-trip", round_trip
    for spec in s.decompositions:
        parts = iwasawa_decompose(A, spec.matrix)
        got = {"k": parts.k, "a": parts.a, "n": parts.n}
        if spec.expect is None:
            yield f"decompose.{spec.label}", CheckResult.ok(value=got)
            continue
        wrong = [p for p in ("k", "a", "n") if got[p].to_list() != spec.expect[p].to_list()]
        yield f"decompose.{spec.label}", _verdict(not wrong, got, wrong, "k + a + n")
    yield "su-compact", _verdict(negative_definite_check(killing_form(A.su())), witness="su")

    Q = QuadraticLieAlgebra(A.algebra, minus_im_killing(A))
    K, AN = A.su_basis(), A.an_basis()
    yield "lagrangian-su", lagrangian_check(K, Q)
    yield "lagrangian-an", lagrangian_check(AN, Q)
    yield "triple", manin_triple_check(Q, K, AN)
    transported = bialgebra_from_manin_triple(Q, K, AN)
    yield "transported", manin_double_agreement(Q, transported)
    yield "transported-bialgebra", bialgebra_check(transported.bialgebra)
    J = manin_para_structure(Q, K, AN)
    yield "para-compatible", J.compatibility_check()
    yield "para-integrable", J.integrability_check()


def _cartan_dirac(s: "Scenario", config: "RunConfig") -> Checks:
    L = s.algebra
    B = killing_form(L)
    nondegenerate = B.is_nondegenerate()
    yield "nondegenerate", _verdict(nondegenerate, witness="killing")
    if not nondegenerate:
        return
    double = quadratic_double(QuadraticLieAlgebra(L, B))
    yield "diagonal", lagrangian_check(double.diagonal, double.quadratic)
    antidiagonal = lagrangian_check(double.antidiagonal, double.quadratic)
    yield "transverse", _verdict(
        independent(double.diagonal + double.antidiagonal),
        {"antidiagonal_subalgebra": antidiagonal.passed},
        "intersection",
    )


# -----------------
# Morphisms
# -----------------
def _morphism(s: "Scenario", config: "RunConfig") -> Checks:
    E = s.model
    report = morphism_check(BundleMap.b_field(E, s.bfield), E, E, config.degree)
    yield "isometry", report.isometry
    yield "anchor", report.anchor
    yield "differential", report.differential
    yield "tensorial", report.tensorial
    yield "in-cotangent", report.in_cotangent
    pairs = sorted(",".join(key) for key in report.deviations)
    twisted = sorted(",".join(key) for key in report.twist_terms)
    yield "deviation", _verdict(
        pairs == twisted,
        {"bracket_preserved": report.bracket_preserved, "pairs": pairs},
        "deviation",
        "deviation appears exactly where the differential of the B-field contracts",
    )
    if s.target is not None:
        F = s.target
        target_report = morphism_check(BundleMap.b_field(E, s.bfield, F), E, F, config.degree)
        yield "twisted-target", _verdict(
            target_report.courant_morphism, witness=sorted(",".join(key) for key in target_report.deviations)
        )


# -----------------
# Registry
# -----------------
_SUITES: dict[str, SuiteSpec] = {
    spec.name: spec
    for spec in (
        SuiteSpec("calculus", (PATCH,), _calculus, ("calculus",),
                  "spot values of para-complex arithmetic and Cartan calculus"),
        SuiteSpec("courant-axioms", (PATCH, CONSTANT), _courant_axioms, (),
                  "antisymmetry and axioms 1-5 on the generated family; exactness on patches"),
        SuiteSpec("brackets", (PATCH, CONSTANT), _brackets, ("brackets",), "bracket spot values"),
        SuiteSpec("dirac", (PATCH, CONSTANT), _dirac, ("dirac",),
                  "Dirac structures, graph closedness and curvature spot values"),
        SuiteSpec("para", (PATCH, CONSTANT), _para, ("structure",),
                  "isotropy, compatibility, integrability, fundamental form, anchor"),
        SuiteSpec("nijenhuis", (PATCH,), _nijenhuis, ("structure",),
                  "Nijenhuis tensors, integrability equivalences, obstruction forms"),
        SuiteSpec("bivector", (PATCH,), _bivector, ("structure",), "induced bivector and its rank law"),
        SuiteSpec("kahler", (PATCH,), _kahler, ("structure", "tangent", "metric", "connection"),
                  "para-Kahler metric, graph connection, split structure, decomposition"),
        SuiteSpec("types", (PATCH,), _types, ("tangent_plus",),
                  "type decomposition, d+/d-, phi diagram, Kahler potentials"),
        SuiteSpec("double", (CONSTANT,), _double, (), "Lie bialgebra, Drinfeld double, R-matrix"),
        SuiteSpec("lie", (LIE,), _lie, ("algebra",), "Jacobi identity and Killing form"),
        SuiteSpec("manin-triple", (LIE,), _manin_triple, ("iwasawa",),
                  "Iwasawa decomposition and the (su(n), a+n) Manin triple"),
        SuiteSpec("cartan-dirac", (LIE,), _cartan_dirac, ("algebra",),
                  "diagonal Lagrangian in g+g with B+(-B)"),
        SuiteSpec("morphism", (PATCH,), _morphism, ("bfield",), "B-field transforms as Courant morphisms"),
    )
}


def get_suite(name: str) -> SuiteSpec:
    if name not in _SUITES:
        raise UnknownNameError("suite", name, list(_SUITES))
    return _SUITES[name]


def list_suites() -> list[str]:
    return sorted(_SUITES)
