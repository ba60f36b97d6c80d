"""Gate findings and the report they roll up into."""

from __future__ import annotations

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class Violation:
    rule_id: str
    severity: str  # ERROR or WARNING
    line: int  # 1-based source line; 0 for findings with no single line
    context: str  # short snippet locating the finding
    message: str


@dataclass(frozen=True)
class GateReport:
    violations: tuple[Violation, ...]
    error_count: int
    warning_count: int
    verdict: str  # PASS or FAIL

    @classmethod
    def from_violations(
        cls, violations: list[Violation] | tuple[Violation, ...], max_warnings: int
    ) -> GateReport:
        """Roll findings up: any error fails, as does exceeding the warning budget."""
        ordered = tuple(sorted(violations, key=lambda v: (v.line, v.rule_id, v.context, v.message)))
        errors = sum(1 for v in ordered if v.severity == ERROR)
        warnings = len(ordered) - errors
        verdict = FAIL if errors > 0 or warnings > max_warnings else PASS
        return cls(violations=ordered, error_count=errors, warning_count=warnings, verdict=verdict)


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" if n == 1 else f"{n} {noun}s"


def report_to_text(report: GateReport) -> str:
    """One line per finding plus a final verdict line with both counts."""
    lines = [
        f"{v.severity} {v.rule_id} line {v.line}: {v.message}" for v in report.violations
    ]
    lines.append(
        f"{report.verdict.upper()} ({_count(report.error_count, 'error')}, "
        f"{_count(report.warning_count, 'warning')})"
    )
    return "\n".join(lines)
