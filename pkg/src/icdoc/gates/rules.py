"""The gate rules themselves, applied over an expanded document.

Document rules:

* G-LINK-1: a local link target the resolver cannot find.
* G-ABBR-1: a capitalized token, or an explicit term reference, naming a
  term the merged glossary does not define.
* G-STYLE-1: a sentence longer than the configured word budget.
* G-STYLE-2: a configured forbidden phrase, matched case-insensitively.
* G-GLOSS-1: a local glossary definition conflicting with the central one.
* G-META-1: a configured required section heading that never appears.
* G-REF-1: a document reference left unresolved against the registry.

Register-map findings (RDL-C1 through RDL-C7) are folded into the same
report with their lines shifted to document coordinates.  Severities
come from configuration; the verdict fails on any error or when the
warning count exceeds the configured budget.
"""

from __future__ import annotations

import re
from typing import Callable, Sequence

from icdoc.gates.config import GateConfig
from icdoc.gates.report import GateReport, Violation
from icdoc.markup.ast import (
    Document,
    Heading,
    IcdRef,
    ListBlock,
    Paragraph,
    TermRef,
    node_line,
    plain_text,
)
from icdoc.markup.extract import extract_abbreviations, extract_links
from icdoc.markup.glossary import Glossary
from icdoc.markup.macros import iter_inline_units
from icdoc.rdl.model import RegisterMap
from icdoc.rdl.validate import validate_rdl

LinkResolver = Callable[[str], bool]

_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])(?=\s|$)")

_CONTEXT_WIDTH = 60


def segment_sentences(text: str) -> list[str]:
    """Split prose at sentence-ending punctuation followed by whitespace."""
    return [part.strip() for part in _SENTENCE_SPLIT_RE.split(text) if part.strip()]


def _snippet(text: str) -> str:
    return text if len(text) <= _CONTEXT_WIDTH else text[: _CONTEXT_WIDTH - 3] + "..."


def run_gates(
    doc: Document,
    maps: Sequence[RegisterMap],
    glossary: Glossary,
    config: GateConfig,
    link_resolver: LinkResolver,
) -> GateReport:
    """Apply every gate rule; pure except for the injected link resolver.

    ``maps`` must hold one parsed register map per rdl block, in block
    order, so their findings can be mapped back to document lines.
    """
    rdl_blocks = doc.rdl_blocks()
    if len(maps) != len(rdl_blocks):
        raise ValueError(f"expected {len(rdl_blocks)} register maps, got {len(maps)}")

    found: list[Violation] = []

    def add(rule_id: str, line: int, context: str, message: str) -> None:
        found.append(
            Violation(
                rule_id=rule_id,
                severity=config.severity_for(rule_id),
                line=line,
                context=_snippet(context),
                message=message,
            )
        )

    for target, line in extract_links(doc):
        if not link_resolver(target):
            add("G-LINK-1", line, target, f"broken link '{target}'")

    known = set(glossary.entries) | config.abbreviation_allowlist
    for token, line in sorted(extract_abbreviations(doc)):
        if token not in known:
            add("G-ABBR-1", line, token, f"abbreviation '{token}' is not defined in the glossary")
    for text, unit_line, nodes in iter_inline_units(doc):
        for node in nodes:
            if isinstance(node, TermRef) and node.term not in glossary:
                add(
                    "G-ABBR-1",
                    node_line(unit_line, text, node),
                    node.term,
                    f"term '{node.term}' is not defined in the glossary",
                )

    def check_style(visible: str, line: int, *, sentences: bool) -> None:
        if sentences:
            for sentence in segment_sentences(visible):
                words = len(sentence.split())
                if words > config.max_sentence_words:
                    add(
                        "G-STYLE-1",
                        line,
                        sentence,
                        f"sentence has {words} words (limit {config.max_sentence_words})",
                    )
        lowered = visible.lower()
        for phrase in config.forbidden_phrases:
            if phrase in lowered:
                add("G-STYLE-2", line, phrase, f"forbidden phrase '{phrase}'")

    # sentence length applies to running prose; forbidden phrases also to headings
    for block in doc.blocks:
        if isinstance(block, Paragraph):
            check_style(plain_text(block.inlines), block.line, sentences=True)
        elif isinstance(block, ListBlock) and not block.generated:
            for item in block.items:
                check_style(plain_text(item.inlines), item.line, sentences=True)
        elif isinstance(block, Heading):
            check_style(plain_text(block.inlines), block.line, sentences=False)

    for conflict in glossary.conflicts:
        add(
            "G-GLOSS-1",
            0,
            conflict.term,
            f"glossary term '{conflict.term}' has conflicting definitions; the central one is kept",
        )

    headings = {b.text for b in doc.blocks if isinstance(b, Heading)}
    for section in config.required_sections:
        if section not in headings:
            add("G-META-1", 0, section, f"required section '{section}' is missing")

    for text, unit_line, nodes in iter_inline_units(doc):
        for node in nodes:
            if isinstance(node, IcdRef) and not node.location:
                add(
                    "G-REF-1",
                    node_line(unit_line, text, node),
                    f"{node.doc_id} {node.version}",
                    f"reference to {node.doc_id} {node.version} is not resolved in the registry",
                )

    for block, rmap in zip(rdl_blocks, maps):
        for violation in validate_rdl(rmap, config.required_field_props):
            context = ".".join(
                part for part in (violation.location.register, violation.location.field) if part
            ) or rmap.name
            add(
                violation.rule_id,
                block.fence_open + violation.location.line,
                context,
                violation.message,
            )

    return GateReport.from_violations(found, config.max_warnings)
