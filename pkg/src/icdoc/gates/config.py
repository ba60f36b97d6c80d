"""Gate configuration: thresholds, word lists, and per-rule severities.

Configuration files are JSON objects whose keys mirror the GateConfig
fields.  Severity overrides are merged over the defaults; every rule
always has a severity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from icdoc.gates.report import ERROR, WARNING
from icdoc.rdl.model import RDL_RULES
from icdoc.rdl.validate import DEFAULT_REQUIRED_FIELD_PROPS, normalize_required_props

GATE_RULES = (
    "G-LINK-1",
    "G-ABBR-1",
    "G-STYLE-1",
    "G-STYLE-2",
    "G-GLOSS-1",
    "G-META-1",
    "G-REF-1",
) + RDL_RULES

DEFAULT_SEVERITIES: dict[str, str] = {
    **{rule: ERROR for rule in RDL_RULES},
    "G-LINK-1": ERROR,
    "G-REF-1": ERROR,
    "G-GLOSS-1": ERROR,
    "G-META-1": ERROR,
    "G-ABBR-1": WARNING,
    "G-STYLE-1": WARNING,
    "G-STYLE-2": WARNING,
}

DEFAULT_MAX_SENTENCE_WORDS = 40
DEFAULT_MAX_WARNINGS = 10


class GateConfigError(ValueError):
    """Raised for configuration files that cannot be applied."""


@dataclass(frozen=True)
class GateConfig:
    max_sentence_words: int = DEFAULT_MAX_SENTENCE_WORDS
    forbidden_phrases: tuple[str, ...] = ()
    abbreviation_allowlist: frozenset[str] = frozenset()
    required_sections: tuple[str, ...] = ()
    required_field_props: frozenset[str] = DEFAULT_REQUIRED_FIELD_PROPS
    severities: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_SEVERITIES))
    max_warnings: int = DEFAULT_MAX_WARNINGS

    def severity_for(self, rule_id: str) -> str:
        return self.severities[rule_id]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise GateConfigError(message)


def _string_list(value: object, key: str) -> tuple[str, ...]:
    _require(
        isinstance(value, list) and all(isinstance(v, str) for v in value),
        f"'{key}' must be a list of strings",
    )
    return tuple(value)


_KNOWN_KEYS = {
    "max_sentence_words",
    "forbidden_phrases",
    "abbreviation_allowlist",
    "required_sections",
    "required_field_props",
    "severities",
    "max_warnings",
}


def load_gate_config(path: Path | str) -> GateConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GateConfigError(f"{path}: not valid JSON: {exc}") from None
    _require(isinstance(raw, dict), f"{path}: configuration must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    _require(not unknown, f"{path}: unknown keys {sorted(unknown)}")

    kwargs: dict = {}
    if "max_sentence_words" in raw:
        value = raw["max_sentence_words"]
        _require(
            isinstance(value, int) and not isinstance(value, bool) and value > 0,
            "'max_sentence_words' must be a positive integer",
        )
        kwargs["max_sentence_words"] = value
    if "forbidden_phrases" in raw:
        phrases = _string_list(raw["forbidden_phrases"], "forbidden_phrases")
        for phrase in phrases:
            _require(phrase == phrase.lower(), f"forbidden phrase {phrase!r} must be lowercase")
            _require(bool(phrase.strip()), "forbidden phrases must not be blank")
        kwargs["forbidden_phrases"] = phrases
    if "abbreviation_allowlist" in raw:
        kwargs["abbreviation_allowlist"] = frozenset(
            _string_list(raw["abbreviation_allowlist"], "abbreviation_allowlist")
        )
    if "required_sections" in raw:
        kwargs["required_sections"] = _string_list(raw["required_sections"], "required_sections")
    if "required_field_props" in raw:
        names = _string_list(raw["required_field_props"], "required_field_props")
        try:
            normalize_required_props(names)
        except ValueError as exc:
            raise GateConfigError(str(exc)) from None
        kwargs["required_field_props"] = frozenset(names)
    if "severities" in raw:
        overrides = raw["severities"]
        _require(isinstance(overrides, dict), "'severities' must be an object")
        for rule, severity in overrides.items():
            _require(rule in GATE_RULES, f"unknown rule id {rule!r} in severities")
            _require(
                severity in (ERROR, WARNING),
                f"severity for {rule} must be '{ERROR}' or '{WARNING}'",
            )
        kwargs["severities"] = {**DEFAULT_SEVERITIES, **overrides}
    if "max_warnings" in raw:
        value = raw["max_warnings"]
        _require(
            isinstance(value, int) and not isinstance(value, bool) and value >= 0,
            "'max_warnings' must be a non-negative integer",
        )
        kwargs["max_warnings"] = value

    return GateConfig(**kwargs)
