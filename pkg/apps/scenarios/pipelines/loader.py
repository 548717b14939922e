# FILE: apps/scenarios/pipelines/loader.py
"""
Scenario documents in, validated scenarios out.

A document is checked twice: first against ``scenario.schema.json``, then by handing
its construction data to the constructors of the owning app. Either stage reports the
first problem as a ScenarioValidationError whose ``field`` is the dotted JSON path of
the offending value.
"""
from __future__ import annotations
import copy
import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterator, Mapping, Optional, Union

from jsonschema import Draft202012Validator

from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.forms import PolyForm
from apps.cartan.services.frames import EigenFrame, PolyMetric
from apps.cartan.services.multivectors import PolyMultivector
from apps.cartan.services.patch import Patch
from apps.cartan.services.types import ParaComplexForm
from apps.core.conf import get_setting
from apps.core.exceptions import CourantError, ScenarioValidationError, UnknownNameError
from apps.courant.services.connections import ConnectionMap
from apps.courant.services.models import ConstantCourantModel, CourantPatchModel
from apps.courant.services.para import ParaStructure, lifted, tangent_cotangent
from apps.courant.services.sections import ConstantSection, GeneralizedSection
from apps.lie.models_lib.registry import get_algebra
from apps.lie.services.algebras import LieAlgebraData, jacobi_check
from apps.lie.services.bialgebras import LieBialgebraData, bialgebra_from_manin_triple
from apps.lie.services.iwasawa import RealifiedMatrixAlgebra, complex_matrix, minus_im_killing
from apps.lie.services.quadratic import QuadraticLieAlgebra
from apps.scalars.services.paracomplex import ParaComplexScalar
from apps.scalars.services.polynomials import parse_gaussian, parse_rational

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEFAULT_SAMPLES = 100

CALCULUS_OPS = (
    "paracomplex-product", "partial", "d", "interior", "lie-bracket", "lie-derivative", "schouten",
    "del-plus", "del-minus", "phi", "phi-inverse", "metric-connection",
)

_KIND_KEYS = {
    "patch-model": {
        "coordinates", "model", "twist", "validate_twist", "tangent", "structure", "metric",
        "connection", "bfield", "target_twist", "dirac", "brackets", "nijenhuis", "calculus",
    },
    "constant-model": {"k", "dual", "manin_triple", "structure", "dirac", "brackets"},
    "lie-structure": {"algebra", "iwasawa"},
}


# -----------------
# Loaded form
# -----------------
@dataclass(frozen=True, eq=False)
class DiracSpec:
    label: str
    generators: tuple
    labels: tuple[str, ...]
    omega: Optional[PolyForm] = None
    curvature: tuple = ()


@dataclass(frozen=True, eq=False)
class CalculusSpec:
    """One spot computation: ``op`` applied to ``operands`` should give ``expect``."""

    label: str
    op: str
    operands: tuple
    expect: Any = None


@dataclass(frozen=True, eq=False)
class DecompositionSpec:
    label: str
    matrix: Any
    expect: Optional[dict] = None


@dataclass(frozen=True, eq=False)
class Scenario:
    """A validated scenario: the source document plus the objects built from it."""

    name: str
    kind: str
    suites: tuple[str, ...]
    document: dict
    description: str = ""
    anchor: str = ""
    expected: dict = field(default_factory=dict)
    model: Any = None
    tangent: Optional[EigenFrame] = None
    tangent_plus: tuple[str, ...] = ()
    structure: Optional[ParaStructure] = None
    metric: Optional[PolyMetric] = None
    connection: Optional[PolyForm] = None
    bfield: Optional[PolyForm] = None
    target: Optional[CourantPatchModel] = None
    dirac: tuple[DiracSpec, ...] = ()
    brackets: tuple = ()
    nijenhuis: tuple = ()
    calculus: tuple[CalculusSpec, ...] = ()
    algebra: Optional[LieAlgebraData] = None
    iwasawa: Optional[RealifiedMatrixAlgebra] = None
    samples: int = DEFAULT_SAMPLES
    decompositions: tuple[DecompositionSpec, ...] = ()

    @property
    def patch(self) -> Optional[Patch]:
        return getattr(self.model, "patch", None)


# -----------------
# Schema validation
# -----------------
@lru_cache(maxsize=None)
def load_schema(filename: str) -> dict:
    path = Path(get_setting("SCHEMA_DIR")) / filename
    return json.loads(path.read_text(encoding="utf-8"))


def json_path(parts) -> str:
    return ".".join(str(p) for p in parts) if parts else "$"


def validate_document(document: Any, filename: str = "scenario.schema.json") -> None:
    """Raise ScenarioValidationError for the first schema violation (in path order)."""
    validator = Draft202012Validator(load_schema(filename))
    errors = sorted(validator.iter_errors(document), key=lambda e: [str(p) for p in e.path])
    if errors:
        error = errors[0]
        raise ScenarioValidationError(error.message, field=json_path(list(error.path)))


@contextmanager
def _field(path: str) -> Iterator[None]:
    """Re-raise constructor errors against the document field they came from."""
    try:
        yield
    except ScenarioValidationError:
        raise
    except CourantError as exc:
        raise ScenarioValidationError(str(exc), field=path, witness=getattr(exc, "witness", None)) from exc


# -----------------
# Value parsers
# -----------------
def _vector_field(patch: Patch, terms: Mapping[str, Any]) -> PolyVectorField:
    return PolyVectorField.from_mapping(patch, dict(terms))


def _form(patch: Patch, terms: Mapping[str, Any], degree: int) -> PolyForm:
    return PolyForm.from_names(patch, dict(terms), degree)


def _section(patch: Patch, spec: Mapping[str, Any]) -> GeneralizedSection:
    if not isinstance(spec, Mapping):
        raise CourantError("a section is an object with 'vector' and/or 'form' terms")
    unknown = set(spec) - {"vector", "form"}
    if unknown:
        raise CourantError(f"unexpected section keys {sorted(unknown)}")
    return GeneralizedSection(_vector_field(patch, spec.get("vector", {})), _form(patch, spec.get("form", {}), 1))


def _constant_section(model: ConstantCourantModel, values: Any) -> ConstantSection:
    if not isinstance(values, list) or len(values) != model.rank:
        raise CourantError(f"a constant section lists {model.rank} rationals")
    return ConstantSection(tuple(parse_rational(str(v)) for v in values))


def _paracomplex(values: Any) -> ParaComplexScalar:
    if not isinstance(values, list) or len(values) != 2:
        raise CourantError("a para-complex number is a [re, im] pair of rationals")
    return ParaComplexScalar(parse_rational(str(values[0])), parse_rational(str(values[1])))


def _gaussian_matrix(rows: Any, n: int):
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise CourantError(f"expected a {n}x{n} matrix")
    return complex_matrix([[parse_gaussian(str(e)) for e in row] for row in rows])


def _needs(entry: Mapping[str, Any], *keys: str) -> None:
    missing = [k for k in keys if k not in entry]
    if missing:
        raise CourantError(f"'{entry['op']}' needs {', '.join(missing)}")


def _calculus_entry(patch: Patch, entry: Mapping[str, Any], tangent: Optional[EigenFrame]) -> CalculusSpec:
    op, k = entry["op"], entry.get("degree", 1)

    def form(terms, degree=k):
        return _form(patch, terms, degree)

    if op == "metric-connection":
        _needs(entry, "metric")
        metric = PolyMetric(patch, tuple(tuple(row) for row in entry["metric"]))
        return CalculusSpec(entry["label"], op, (ConnectionMap.from_metric(metric),))
    _needs(entry, "expect")
    expect = entry["expect"]
    if op == "paracomplex-product":
        _needs(entry, "left", "right")
        return CalculusSpec(entry["label"], op, (_paracomplex(entry["left"]), _paracomplex(entry["right"])), _paracomplex(expect))
    if op == "partial":
        _needs(entry, "polynomial", "variable")
        operands = (patch.poly(entry["polynomial"]), patch.index(entry["variable"]))
        return CalculusSpec(entry["label"], op, operands, patch.poly(expect))
    if op == "d":
        _needs(entry, "form")
        return CalculusSpec(entry["label"], op, (form(entry["form"]),), form(expect, k + 1))
    if op in ("interior", "lie-derivative"):
        _needs(entry, "vector", "form")
        operands = (_vector_field(patch, entry["vector"]), form(entry["form"]))
        return CalculusSpec(entry["label"], op, operands, form(expect, k - 1 if op == "interior" else k))
    if op == "lie-bracket":
        _needs(entry, "left", "right")
        operands = (_vector_field(patch, entry["left"]), _vector_field(patch, entry["right"]))
        return CalculusSpec(entry["label"], op, operands, _vector_field(patch, expect))
    if op == "schouten":
        _needs(entry, "left", "right")
        operands = tuple(PolyMultivector.from_names(patch, dict(entry[s]), k) for s in ("left", "right"))
        return CalculusSpec(entry["label"], op, operands, PolyMultivector.from_names(patch, dict(expect), 2 * k - 1))
    if op in ("del-plus", "del-minus"):
        _needs(entry, "form")
        if tangent is None:
            raise CourantError(f"'{op}' needs a tangent split")
        return CalculusSpec(entry["label"], op, (form(entry["form"]), tangent), form(expect, k + 1))
    if op == "phi":
        _needs(entry, "left", "right")
        if not isinstance(expect, Mapping) or set(expect) != {"re", "im"}:
            raise CourantError("'phi' expects an object with 're' and 'im' terms")
        return CalculusSpec(
            entry["label"], op, (form(entry["left"]), form(entry["right"])),
            ParaComplexForm(form(expect["re"]), form(expect["im"])),
        )
    if op == "phi-inverse":
        _needs(entry, "left", "right")
        if not isinstance(expect, list) or len(expect) != 2:
            raise CourantError("'phi-inverse' expects a pair of forms")
        operands = (ParaComplexForm(form(entry["left"]), form(entry["right"])),)
        return CalculusSpec(entry["label"], op, operands, (form(expect[0]), form(expect[1])))
    raise UnknownNameError("calculus operation", op, list(CALCULUS_OPS))


def _algebra(spec: Mapping[str, Any]) -> LieAlgebraData:
    if "name" in spec:
        try:
            return get_algebra(spec["name"], **spec.get("params", {}))
        except TypeError as exc:
            raise CourantError(f"bad parameters for algebra '{spec['name']}': {exc}") from exc
    dimension = spec["dimension"]
    names = tuple(spec.get("names", ())) or tuple(f"e{i + 1}" for i in range(dimension))
    if len(names) != dimension:
        raise CourantError(f"{len(names)} basis names for dimension {dimension}")

    def index(name: str) -> int:
        if name not in names:
            raise UnknownNameError("basis element", name, list(names))
        return names.index(name)

    brackets = {}
    for pair, terms in spec["brackets"].items():
        left, right = (p.strip() for p in pair.split(","))
        brackets[(index(left), index(right))] = {index(k): parse_rational(v) for k, v in terms.items()}
    return LieAlgebraData.from_brackets(dimension, brackets, names)


def _declared_algebra(spec: Mapping[str, Any], path: str) -> LieAlgebraData:
    with _field(path):
        L = _algebra(spec)
    if spec.get("declared_valid", True):
        result = jacobi_check(L)
        if not result:
            raise ScenarioValidationError(
                f"Jacobi identity fails on a declared-valid algebra ({result.detail})",
                field=path,
                witness=result.witness,
            )
    return L


def _iwasawa_bialgebra(n: int) -> LieBialgebraData:
    A = RealifiedMatrixAlgebra(n)
    Q = QuadraticLieAlgebra(A.algebra, minus_im_killing(A))
    return bialgebra_from_manin_triple(Q, A.su_basis(), A.an_basis()).bialgebra


# -----------------
# Builders per kind
# -----------------
def _patch_model(c: Mapping[str, Any]) -> dict:
    with _field("construction.coordinates"):
        patch = Patch(tuple(c["coordinates"]))
    out: dict[str, Any] = {}
    mode = c.get("model", "standard")
    with _field("construction.twist"):
        if mode == "twisted":
            if "twist" not in c:
                raise CourantError("a twisted model needs a 'twist' 3-form")
            E = CourantPatchModel.twisted(patch, _form(patch, c["twist"], 3), validate=c.get("validate_twist", True))
        elif "twist" in c:
            raise CourantError(f"a twist is only read by twisted models, not '{mode}'")
        elif mode == "broken-axiom5":
            E = CourantPatchModel.broken_axiom5(patch)
        else:
            E = CourantPatchModel.standard(patch)
    out["model"] = E

    if "tangent" in c:
        with _field("construction.tangent"):
            spec = c["tangent"]
            if "plus" in spec:
                out["tangent"] = EigenFrame.coordinate_split(patch, spec["plus"])
                out["tangent_plus"] = tuple(spec["plus"])
            else:
                out["tangent"] = EigenFrame(patch, tuple(_vector_field(patch, t) for t in spec["frame"]))

    if "structure" in c:
        with _field("construction.structure"):
            spec = c["structure"]
            if spec == "lifted":
                if "tangent" not in out:
                    raise CourantError("a lifted structure needs a tangent split")
                out["structure"] = lifted(E, out["tangent"])
            elif spec == "tangent-cotangent":
                out["structure"] = tangent_cotangent(E)
            else:
                out["structure"] = ParaStructure(
                    E,
                    tuple(_section(patch, s) for s in spec["plus"]),
                    tuple(_section(patch, s) for s in spec["minus"]),
                )

    if "metric" in c:
        with _field("construction.metric"):
            out["metric"] = PolyMetric(patch, tuple(tuple(row) for row in c["metric"]))
    for key in ("connection", "bfield"):
        if key in c:
            with _field(f"construction.{key}"):
                out[key] = _form(patch, c[key], 2)
    if "target_twist" in c:
        with _field("construction.target_twist"):
            out["target"] = CourantPatchModel.twisted(patch, _form(patch, c["target_twist"], 3))

    dirac = []
    for i, entry in enumerate(c.get("dirac", [])):
        with _field(f"construction.dirac.{i}"):
            omega = _form(patch, entry["omega"], 2) if "omega" in entry else None
            if omega is not None:
                generators = ConnectionMap.graph(patch, omega).images
                labels = tuple(f"A(d/d{name})" for name in patch.names)
            else:
                generators = tuple(_section(patch, s) for s in entry["generators"])
                labels = tuple(f"g{j + 1}" for j in range(len(generators)))
            curvature = tuple(
                (_vector_field(patch, p["left"]), _vector_field(patch, p["right"]), _section(patch, p["expect"]))
                for p in entry.get("curvature", [])
            )
            if curvature and omega is None:
                raise CourantError("curvature spot values need an 'omega' graph")
            dirac.append(DiracSpec(entry["label"], tuple(generators), labels, omega, curvature))
    out["dirac"] = tuple(dirac)

    with _field("construction.brackets"):
        out["brackets"] = tuple(
            (_section(patch, p["left"]), _section(patch, p["right"]), _section(patch, p["expect"]))
            for p in c.get("brackets", [])
        )
    with _field("construction.nijenhuis"):
        if c.get("nijenhuis") and "tangent" not in out:
            raise CourantError("Nijenhuis spot values need a tangent split")
        out["nijenhuis"] = tuple(
            (_vector_field(patch, p["left"]), _vector_field(patch, p["right"]), _vector_field(patch, p["expect"]))
            for p in c.get("nijenhuis", [])
        )
    calculus = []
    for i, entry in enumerate(c.get("calculus", [])):
        with _field(f"construction.calculus.{i}"):
            calculus.append(_calculus_entry(patch, entry, out.get("tangent")))
    out["calculus"] = tuple(calculus)
    return out


def _constant_model(c: Mapping[str, Any]) -> dict:
    out: dict[str, Any] = {}
    if "manin_triple" in c:
        with _field("construction.manin_triple"):
            bialgebra = _iwasawa_bialgebra(c["manin_triple"]["iwasawa"])
        validate = True
    else:
        k = _declared_algebra(c["k"], "construction.k")
        dual = _declared_algebra(c["dual"], "construction.dual")
        with _field("construction"):
            bialgebra = LieBialgebraData(k, dual)
        validate = c["k"].get("declared_valid", True) and c["dual"].get("declared_valid", True)
    with _field("construction"):
        E = ConstantCourantModel(bialgebra, validate=validate)
    out["model"] = E

    if "structure" in c:
        with _field("construction.structure"):
            spec = c["structure"]
            if not isinstance(spec, Mapping):
                raise CourantError(f"'{spec}' needs a patch model; list the eigenframes instead")
            out["structure"] = ParaStructure(
                E,
                tuple(_constant_section(E, v) for v in spec["plus"]),
                tuple(_constant_section(E, v) for v in spec["minus"]),
                tuple(f"{name}+" for name in bialgebra.k.names) + tuple(f"{name}-" for name in bialgebra.k.names),
            )

    dirac = []
    for i, entry in enumerate(c.get("dirac", [])):
        with _field(f"construction.dirac.{i}"):
            if "generators" not in entry or "curvature" in entry:
                raise CourantError("constant models take Dirac generators only")
            generators = tuple(_constant_section(E, v) for v in entry["generators"])
            dirac.append(DiracSpec(entry["label"], generators, tuple(f"g{j + 1}" for j in range(len(generators)))))
    out["dirac"] = tuple(dirac)

    with _field("construction.brackets"):
        out["brackets"] = tuple(
            (_constant_section(E, p["left"]), _constant_section(E, p["right"]), _constant_section(E, p["expect"]))
            for p in c.get("brackets", [])
        )
    return out


def _lie_structure(c: Mapping[str, Any]) -> dict:
    out: dict[str, Any] = {}
    if "algebra" in c:
        out["algebra"] = _declared_algebra(c["algebra"], "construction.algebra")
    if "iwasawa" in c:
        with _field("construction.iwasawa"):
            out["iwasawa"] = RealifiedMatrixAlgebra(c["iwasawa"]["n"])
        out["samples"] = c["iwasawa"].get("samples", DEFAULT_SAMPLES)
        decompositions = []
        for i, entry in enumerate(c["iwasawa"].get("decompositions", [])):
            with _field(f"construction.iwasawa.decompositions.{i}"):
                n = out["iwasawa"].n
                expect = entry.get("expect")
                if expect is not None:
                    expect = {part: _gaussian_matrix(expect[part], n) for part in ("k", "a", "n")}
                decompositions.append(DecompositionSpec(entry["label"], _gaussian_matrix(entry["matrix"], n), expect))
        out["decompositions"] = tuple(decompositions)
    return out


_BUILDERS = {
    "patch-model": _patch_model,
    "constant-model": _constant_model,
    "lie-structure": _lie_structure,
}


# -----------------
# Public API
# -----------------
def parse_document(text: Union[str, bytes]) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError(f"malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(document, dict):
        raise ScenarioValidationError("a scenario document is a JSON object")
    return document


def scenario_load(document: Union[Mapping[str, Any], str, bytes]) -> Scenario:
    """Validate ``document`` (a mapping or JSON text) and build its scenario."""
    from apps.scenarios.services.suites import get_suite

    if isinstance(document, (str, bytes)):
        document = parse_document(document)
    document = copy.deepcopy(dict(document))
    validate_document(document)

    kind = document["kind"]
    construction = document["construction"]
    stray = set(construction) - _KIND_KEYS[kind]
    if stray:
        key = sorted(stray)[0]
        raise ScenarioValidationError(f"not read by {kind} scenarios", field=f"construction.{key}")

    parts = _BUILDERS[kind](construction)
    scenario = Scenario(
        name=document["name"],
        kind=kind,
        suites=tuple(document["suites"]),
        document=document,
        description=document.get("description", ""),
        anchor=document.get("anchor", ""),
        expected=dict(document.get("expected", {})),
        **parts,
    )

    for i, suite_id in enumerate(scenario.suites):
        try:
            suite = get_suite(suite_id)
        except UnknownNameError as exc:
            raise ScenarioValidationError(str(exc), field=f"suites.{i}") from exc
        problem = suite.unsupported(scenario)
        if problem:
            raise ScenarioValidationError(problem, field=f"suites.{i}")
    for check_id in scenario.expected:
        if check_id.split(".", 1)[0] not in scenario.suites:
            raise ScenarioValidationError("expectation for a suite the scenario does not run", field=f"expected.{check_id}")

    logger.debug("scenario %s loaded (%s, suites %s)", scenario.name, kind, ", ".join(scenario.suites))
    return scenario


def read_scenario_file(path: Union[str, Path]) -> Scenario:
    return scenario_load(Path(path).read_bytes())


def scenario_dump(scenario: Scenario) -> dict:
    """Canonical document: keys sorted, a fresh copy the caller may mutate."""
    return json.loads(json.dumps(scenario.document, sort_keys=True))
