# FILE: apps/scenarios/services/runner.py
"""
Run suites over scenarios and compare the outcome with the recorded expectations.
"""
from __future__ import annotations
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from apps.core.conf import get_setting, resolve_degree, resolve_seed
from apps.core.exceptions import CourantError, UnknownNameError
from apps.core.results import CheckResult
from apps.scenarios.pipelines.loader import Scenario
from apps.scenarios.services.reports import to_jsonable
from apps.scenarios.services.suites import get_suite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    seed: int
    degree: int
    random_sections: int

    @classmethod
    def resolve(
        cls, seed: Optional[int] = None, degree: Optional[int] = None, random_sections: Optional[int] = None
    ) -> RunConfig:
        """Explicit values win over ``settings.COURANT``."""
        sections = int(get_setting("RANDOM_SECTIONS") if random_sections is None else random_sections)
        if sections < 0:
            raise CourantError(f"random section count must be non-negative, got {sections}")
        return cls(resolve_seed(seed), resolve_degree(degree), sections)

    def as_dict(self) -> dict[str, int]:
        return {"seed": self.seed, "degree": self.degree, "random_sections": self.random_sections}


@dataclass
class CheckOutcome:
    check_id: str
    suite: str
    result: CheckResult
    expected: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.result.passed

    @property
    def matches(self) -> Optional[bool]:
        """None without an expectation; otherwise verdict, value and witness all agree."""
        if self.expected is None:
            return None
        if self.expected["passed"] != self.result.passed:
            return False
        for key in ("value", "witness"):
            if key in self.expected and self.expected[key] != to_jsonable(getattr(self.result, key)):
                return False
        return True


@dataclass
class Report:
    scenario: str
    kind: str
    suites: tuple[str, ...]
    config: RunConfig
    checks: list[CheckOutcome] = field(default_factory=list)
    missing: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def as_expected(self) -> bool:
        return not self.missing and all(c.matches is not False for c in self.checks)

    def failures(self) -> list[CheckOutcome]:
        return [c for c in self.checks if not c.passed]

    def mismatches(self) -> list[CheckOutcome]:
        return [c for c in self.checks if c.matches is False]

    def outcome(self, check_id: str) -> CheckOutcome:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise UnknownNameError("check", check_id, [c.check_id for c in self.checks])


def _run_one(s: Scenario, suite_id: str, config: RunConfig) -> list[CheckOutcome]:
    suite = get_suite(suite_id)
    outcomes = []
    try:
        for name, result in suite.run(s, config):
            check_id = f"{suite_id}.{name}"
            outcomes.append(CheckOutcome(check_id, suite_id, result, s.expected.get(check_id)))
    except CourantError as exc:
        # a failed precondition ends the suite as one failed check
        check_id = f"{suite_id}.error"
        logger.warning("%s/%s stopped: %s", s.name, suite_id, exc)
        result = CheckResult.fail(getattr(exc, "witness", None), detail=str(exc))
        outcomes.append(CheckOutcome(check_id, suite_id, result, s.expected.get(check_id)))
    return outcomes


def run_suite(
    s: Scenario,
    suite_id: Optional[str] = None,
    seed: Optional[int] = None,
    degree: Optional[int] = None,
    random_sections: Optional[int] = None,
) -> Report:
    """Run one suite of ``s`` (all of its suites when ``suite_id`` is None)."""
    if suite_id is not None:
        get_suite(suite_id)
        if suite_id not in s.suites:
            raise UnknownNameError(f"suite for scenario '{s.name}'", suite_id, list(s.suites))
    suites = (suite_id,) if suite_id is not None else s.suites
    config = RunConfig.resolve(seed, degree, random_sections)
    report = Report(s.name, s.kind, tuple(suites), config)

    for sid in suites:
        started = time.perf_counter()
        report.checks.extend(_run_one(s, sid, config))
        report.timing[sid] = round(time.perf_counter() - started, 6)

    produced = {c.check_id for c in report.checks}
    report.missing = sorted(
        check_id for check_id in s.expected
        if check_id.split(".", 1)[0] in suites and check_id not in produced
    )
    for c in report.failures():
        logger.info("%s: %s failed (witness %s)", s.name, c.check_id, c.result.witness)
    if not report.as_expected:
        logger.warning("%s: outcome differs from the recorded expectations", s.name)
    return report


def run_catalog(
    seed: Optional[int] = None, degree: Optional[int] = None, names: Optional[Iterable[str]] = None
) -> list[Report]:
    from apps.scenarios.models_lib.catalog import get_scenario, list_scenarios

    return [run_suite(get_scenario(name), seed=seed, degree=degree) for name in (names or list_scenarios())]

