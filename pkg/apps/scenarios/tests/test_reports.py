import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase
from sympy import QQ, QQ_I

from apps.core.exceptions import ScenarioValidationError
from apps.courant.services.sections import ConstantSection
from apps.courant.tests.structures import R2, R3, cov, form, vec, vf
from apps.lie.models_lib.registry import get_algebra
from apps.lie.services.algebras import killing_form
from apps.lie.services.iwasawa import complex_matrix
from apps.scenarios.models_lib.catalog import get_scenario
from apps.scenarios.services.reports import dumps, report_document, to_jsonable, validate_report, write_report
from apps.scenarios.services.runner import run_suite


class ToJsonableTests(SimpleTestCase):
    def test_scalars(self):
        self.assertEqual(to_jsonable(QQ(-3, 6)), "-1/2")
        self.assertEqual(to_jsonable(QQ(4)), "4")
        self.assertEqual(to_jsonable(True), True)
        self.assertIsNone(to_jsonable(None))
        self.assertEqual(to_jsonable(QQ_I(1, -2)), "1-2i")
        self.assertEqual(to_jsonable(QQ_I(0, 1)), "i")
        self.assertEqual(to_jsonable(QQ_I(QQ(1, 2), 0)), "1/2")

    def test_forms_and_fields(self):
        self.assertEqual(to_jsonable(form(R3, {"y,z": "x"}, 2)), {"y,z": "x"})
        self.assertEqual(to_jsonable(vf(R2, x="1", y="0")), {"x": "1"})
        self.assertEqual(to_jsonable(vec(R2, y="x") + cov(R2, x="1/2")), {"vector": {"y": "x"}, "form": {"x": "1/2"}})
        self.assertEqual(to_jsonable(cov(R2, y="-1")), {"form": {"y": "-1"}})

    def test_constant_data(self):
        self.assertEqual(to_jsonable(ConstantSection((QQ(1), QQ(0), QQ(-1, 3)))), ["1", "0", "-1/3"])
        self.assertEqual(to_jsonable(killing_form(get_algebra("su2")))[0], ["-12", "0", "0"])
        self.assertEqual(to_jsonable(complex_matrix([[(0, 1), 2], [0, (0, -1)]])), [["i", "2"], ["0", "-i"]])

    def test_containers(self):
        value = {("d/dx", "d/dy"): QQ(1, 2), "b": [QQ(1), (QQ(2), "s")]}
        self.assertEqual(to_jsonable(value), {"b": ["1", ["2", "s"]], "d/dx,d/dy": "1/2"})
        self.assertEqual(list(to_jsonable({"b": 1, "a": 2})), ["a", "b"])


class ReportDocumentTests(SimpleTestCase):
    def test_document_validates(self):
        report = run_suite(get_scenario("nonintegrable-R4"), "nijenhuis")
        document = report_document(report)
        validate_report(document)
        self.assertEqual(document["schema_version"], 1)
        self.assertFalse(document["passed"])
        self.assertTrue(document["as_expected"])
        by_id = {c["id"]: c for c in document["checks"]}
        self.assertEqual(by_id["nijenhuis.frame"]["witness"], ["T+[0]", "T+[1]"])
        self.assertEqual(by_id["nijenhuis.obstruction"]["value"], {"phi": {"0,1,2": "1"}, "psi": {}})
        self.assertIs(by_id["nijenhuis.cyclic"]["matches"], True)
        json.loads(dumps(document))

    def test_invalid_document_rejected(self):
        document = report_document(run_suite(get_scenario("std-R2"), "para"))
        document["config"]["degree"] = -1
        with self.assertRaises(ScenarioValidationError) as ctx:
            validate_report(document)
        self.assertEqual(ctx.exception.field, "config.degree")

    def test_write_one_and_many(self):
        one = run_suite(get_scenario("std-R2"), "para")
        two = run_suite(get_scenario("rotated-R2"), "bivector")
        with tempfile.TemporaryDirectory() as tmp:
            path = write_report(Path(tmp) / "out" / "one.json", [one])
            self.assertEqual(json.loads(path.read_text(encoding="utf-8"))["scenario"], "std-R2")
            path = write_report(Path(tmp) / "many.json", [one, two])
            names = [d["scenario"] for d in json.loads(path.read_text(encoding="utf-8"))]
            self.assertEqual(names, ["std-R2", "rotated-R2"])
            self.assertTrue(path.read_text(encoding="utf-8").endswith("}\n]\n"))
