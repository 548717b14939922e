# FILE: apps/scenarios/management/commands/courant.py
from __future__ import annotations
import json
from typing import List

from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import CourantError
from apps.lie.services.iwasawa import RealifiedMatrixAlgebra, complex_matrix, iwasawa_decompose
from apps.scalars.services.polynomials import parse_gaussian
from apps.scenarios.models_lib.catalog import get_scenario, list_scenarios
from apps.scenarios.pipelines.loader import scenario_dump
from apps.scenarios.services.reports import dumps, to_jsonable, write_report
from apps.scenarios.services.runner import Report, run_catalog, run_suite

KINDS = ["patch-model", "constant-model", "lie-structure"]


def parse_matrix(text: str) -> List[List[tuple]]:
    """Rows split by ';', entries by ','; entries like ``1``, ``-1/2``, ``2i`` or ``1-3i``."""
    rows = [[parse_gaussian(e.strip()) for e in row.split(",")] for row in text.split(";") if row.strip()]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise CourantError(f"--matrix must be a square matrix, got {text!r}")
    return rows


class Command(BaseCommand):
    help = "List, describe and check Courant scenarios; decompose sl(n, C) matrices."

    def add_arguments(self, parser):
        sub = parser.add_subparsers(dest="action", required=True)

        p = sub.add_parser("list", help="Catalog scenario names")
        p.add_argument("--kind", choices=KINDS, help="Only scenarios of this kind")

        p = sub.add_parser("describe", help="Construction, suites and literature anchor of a scenario")
        p.add_argument("name")
        p.add_argument("--json", action="store_true", help="Print the scenario document")

        p = sub.add_parser("check", help="Run a scenario's suites and compare with its expectations")
        p.add_argument("name", nargs="?")
        p.add_argument("--all", action="store_true", help="Run the whole catalog")
        p.add_argument("--suite", help="Run only this suite")
        p.add_argument("--seed", type=int, help="Random seed (default settings.COURANT['SEED'])")
        p.add_argument("--degree", type=int, help="Degree bound (default settings.COURANT['DEGREE_BOUND'])")
        p.add_argument("--json", dest="json_path", help="Write the report document to this path")

        p = sub.add_parser("decompose", help="Iwasawa parts k + a + n of a traceless complex matrix")
        p.add_argument("family", choices=["sl"])
        p.add_argument("n", type=int)
        p.add_argument("--matrix", required=True, help='Rows split by ";" e.g. "0,1;1,0" or "i,0;0,-i"')

    def handle(self, *args, **o):
        action = o["action"]
        try:
            if action == "list":
                self._list(o["kind"])
            elif action == "describe":
                self._describe(o["name"], o["json"])
            elif action == "check":
                self._check(o)
            else:
                self._decompose(o["n"], o["matrix"])
        except CourantError as e:
            raise CommandError(str(e), returncode=2) from e

    # -----------------
    # Subcommands
    # -----------------
    def _list(self, kind):
        for name in list_scenarios(kind):
            s = get_scenario(name)
            self.stdout.write(f"{name:<22} {s.kind:<15} {', '.join(s.suites)}")

    def _describe(self, name, as_json):
        s = get_scenario(name)
        if as_json:
            self.stdout.write(dumps(scenario_dump(s)), ending="")
            return
        self.stdout.write(self.style.NOTICE(f"{s.name} ({s.kind})"))
        if s.description:
            self.stdout.write(s.description)
        if s.anchor:
            self.stdout.write(f"anchor: {s.anchor}")
        self.stdout.write(f"suites: {', '.join(s.suites)}")
        self.stdout.write(f"expectations: {len(s.expected)}")
        self.stdout.write("construction:")
        self.stdout.write(json.dumps(s.document["construction"], indent=2, sort_keys=True))

    def _check(self, o):
        if o["all"] == bool(o["name"]):
            raise CommandError("give a scenario name or --all", returncode=2)
        if o["all"]:
            if o["suite"]:
                raise CommandError("--suite needs a single scenario", returncode=2)
            reports = run_catalog(seed=o["seed"], degree=o["degree"])
        else:
            reports = [run_suite(get_scenario(o["name"]), o["suite"], seed=o["seed"], degree=o["degree"])]

        for report in reports:
            self._print_report(report)
        if o["json_path"]:
            path = write_report(o["json_path"], reports)
            self.stdout.write(f"report written to {path}")

        failed = [r.scenario for r in reports if not r.passed]
        unexpected = [r.scenario for r in reports if not r.as_expected]
        if failed or unexpected:
            raise CommandError(
                f"failed: {failed or 'none'}; differs from expectations: {unexpected or 'none'}", returncode=1
            )
        self.stdout.write(self.style.SUCCESS(f"OK: {len(reports)} scenario(s) passed"))

    def _print_report(self, report: Report):
        c = report.config
        self.stdout.write(self.style.NOTICE(
            f"{report.scenario}: seed={c.seed} degree={c.degree} random_sections={c.random_sections}"
        ))
        for outcome in report.checks:
            mark = self.style.SUCCESS("PASS") if outcome.passed else self.style.ERROR("FAIL")
            line = f"  {mark} {outcome.check_id}"
            if not outcome.passed and outcome.result.witness is not None:
                line += f"  witness={json.dumps(to_jsonable(outcome.result.witness))}"
            if outcome.matches is False:
                line += "  " + self.style.WARNING("(unexpected)")
            self.stdout.write(line)
        for check_id in report.missing:
            self.stdout.write("  " + self.style.WARNING(f"MISSING {check_id}"))

    def _decompose(self, n, text):
        rows = parse_matrix(text)
        if len(rows) != n:
            raise CourantError(f"sl {n} needs a {n}x{n} matrix, got {len(rows)}x{len(rows)}")
        parts = iwasawa_decompose(RealifiedMatrixAlgebra(n), complex_matrix(rows))
        for label, part in (("k", parts.k), ("a", parts.a), ("n", parts.n)):
            self.stdout.write(f"{label} = {json.dumps(to_jsonable(part))}")
