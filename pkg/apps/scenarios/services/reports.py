# FILE: apps/scenarios/services/reports.py
from __future__ import annotations
import json
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import TYPE_CHECKING, Any, Sequence, Union

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement

from apps.cartan.services.alternating import Alternating
from apps.cartan.services.fields import PolyVectorField
from apps.cartan.services.types import ParaComplexForm
from apps.courant.services.algebroids import AlgebroidForm
from apps.courant.services.sections import ConstantSection, GeneralizedSection
from apps.lie.services.algebras import BilinearFormData
from apps.scalars.services.paracomplex import ParaComplexScalar
from apps.scalars.services.polynomials import format_polynomial, format_rational

if TYPE_CHECKING:
    from apps.scenarios.services.runner import Report

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


# -----------------
# Exact values as JSON
# -----------------
def _gaussian(z) -> str:
    re, im = QQ.convert(z.x), QQ.convert(z.y)
    if not im:
        return format_rational(re)
    imag = "i" if im == 1 else "-i" if im == -1 else f"{format_rational(im)}i"
    if not re:
        return imag
    return f"{format_rational(re)}{imag if imag.startswith('-') else '+' + imag}"


def _terms(alpha: Alternating) -> dict[str, str]:
    names = alpha.patch.names
    return {",".join(names[i] for i in idx): format_polynomial(c) for idx, c in alpha.items()}


def _vector_terms(X: PolyVectorField) -> dict[str, str]:
    return {name: format_polynomial(c) for name, c in zip(X.patch.names, X.components) if c}


def to_jsonable(value: Any) -> Any:
    """Exact objects in the notation scenario documents use: rationals "p/q", polynomials as text."""
    if value is None or isinstance(value, (bool, str, int)):
        return value
    if isinstance(value, PolyElement):
        return format_polynomial(value)
    if QQ_I.of_type(value):
        return _gaussian(value)
    if QQ.of_type(value):
        return format_rational(value)
    if isinstance(value, Alternating):
        return _terms(value)
    if isinstance(value, PolyVectorField):
        return _vector_terms(value)
    if isinstance(value, ParaComplexScalar):
        return [format_rational(value.re), format_rational(value.im)]
    if isinstance(value, ParaComplexForm):
        return {"re": _terms(value.re), "im": _terms(value.im)}
    if isinstance(value, GeneralizedSection):
        out = {}
        if not value.vf.is_zero():
            out["vector"] = _vector_terms(value.vf)
        if not value.form.is_zero():
            out["form"] = _terms(value.form)
        return out
    if isinstance(value, ConstantSection):
        return [format_rational(v) for v in value.values]
    if isinstance(value, AlgebroidForm):
        return {",".join(str(i) for i in idx): to_jsonable(c) for idx, c in value.coeffs.items()}
    if isinstance(value, BilinearFormData):
        return to_jsonable(value.matrix)
    if isinstance(value, DomainMatrix):
        return to_jsonable(value.to_list())
    if isinstance(value, Mapping):
        out = {}
        for key, item in value.items():
            key = ",".join(str(k) for k in key) if isinstance(key, tuple) else str(key)
            out[key] = to_jsonable(item)
        return dict(sorted(out.items()))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return str(value)


# -----------------
# Report documents
# -----------------
def report_document(report: "Report") -> dict[str, Any]:
    checks = []
    for c in report.checks:
        checks.append({
            "id": c.check_id,
            "suite": c.suite,
            "passed": c.passed,
            "witness": to_jsonable(c.result.witness),
            "value": to_jsonable(c.result.value),
            "detail": c.result.detail,
            "expected": c.expected,
            "matches": c.matches,
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": report.scenario,
        "kind": report.kind,
        "suites": list(report.suites),
        "config": report.config.as_dict(),
        "passed": report.passed,
        "as_expected": report.as_expected,
        "checks": checks,
        "missing": list(report.missing),
        "timing": dict(report.timing),
    }


def validate_report(document: Mapping[str, Any]) -> None:
    from apps.scenarios.pipelines.loader import validate_document

    validate_document(document, "report.schema.json")


def dumps(documents: Union[dict, list]) -> str:
    return json.dumps(documents, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(path: Union[str, Path], reports: Sequence["Report"]) -> Path:
    """One report writes an object, several write a list."""
    documents = [report_document(r) for r in reports]
    for document in documents:
        validate_report(document)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(documents[0] if len(documents) == 1 else documents), encoding="utf-8")
    logger.info("report for %d scenario(s) written to %s", len(documents), path)
    return path
