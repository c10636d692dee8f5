"""Assembly and rendering of verification reports.

The JSON rendering is byte-stable for a fixed seed: keys are sorted, checks
are ordered by name, and no timestamps are embedded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .poisson import calibration_constants
from .specfile import SpecDocument
from .suite import CheckResult, run_checks

REPORT_SCHEMA = 1


@dataclass
class VerificationReport:
    version: str
    schema: int
    seed: int
    cases: int
    calibration: dict
    checks: list[CheckResult]
    summary: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return self.summary.get("fail", 0) == 0


def build_report(doc: SpecDocument, seed: int | None = None,
                 cases: int | None = None,
                 names: list[str] | None = None) -> VerificationReport:
    from . import __version__

    seed = doc.suite_seed if seed is None else seed
    cases = doc.suite_cases if cases is None else cases
    checks = run_checks(doc, seed, cases, names)
    summary = {
        "pass": sum(1 for c in checks if c.status == "pass"),
        "fail": sum(1 for c in checks if c.status == "fail"),
        "total": len(checks),
    }
    calibration = {k: str(v) for k, v in sorted(calibration_constants().items())}
    return VerificationReport(
        version=__version__,
        schema=REPORT_SCHEMA,
        seed=seed,
        cases=cases,
        calibration=calibration,
        checks=checks,
        summary=summary,
    )


def report_payload(report: VerificationReport) -> dict:
    return {
        "version": report.version,
        "schema": report.schema,
        "seed": report.seed,
        "cases": report.cases,
        "calibration": report.calibration,
        "checks": [
            {
                "name": c.name,
                "law": c.law,
                "status": c.status,
                "cases": c.cases,
                "counterexample": c.counterexample,
                "details": c.details,
            }
            for c in report.checks
        ],
        "summary": report.summary,
    }


def render_json(report: VerificationReport) -> str:
    return json.dumps(report_payload(report), sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


def render_human(report: VerificationReport) -> str:
    lines = [
        f"weillift verification report (tool {report.version}, schema {report.schema})",
        f"seed {report.seed}   cases/check {report.cases}",
        "calibration: " + "  ".join(f"{k}={v}" for k, v in report.calibration.items()),
        "",
    ]
    width = max((len(c.name) for c in report.checks), default=10)
    for c in report.checks:
        mark = "PASS" if c.status == "pass" else "FAIL"
        lines.append(f"{mark}  {c.name.ljust(width)}  cases={c.cases:<4}  {c.law}")
        if c.counterexample:
            lines.append(f"      counterexample: {json.dumps(c.counterexample, sort_keys=True)}")
        if c.details:
            lines.append("      recorded: "
                         + ", ".join(f"{k}={v}" for k, v in sorted(c.details.items())))
    lines.append("")
    lines.append(f"summary: {report.summary['pass']} passed, "
                 f"{report.summary['fail']} failed, {report.summary['total']} total")
    return "\n".join(lines) + "\n"
