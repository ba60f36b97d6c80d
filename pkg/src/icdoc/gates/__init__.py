"""Documentation quality gates: configurable checks with a pass/fail verdict."""

from icdoc.gates.config import GateConfig, GateConfigError, load_gate_config
from icdoc.gates.report import GateReport, Violation, report_to_text
from icdoc.gates.rules import run_gates, segment_sentences

__all__ = [
    "GateConfig",
    "GateConfigError",
    "GateReport",
    "Violation",
    "load_gate_config",
    "report_to_text",
    "run_gates",
    "segment_sentences",
]
