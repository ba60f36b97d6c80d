"""Symptom extraction over parsed documents: links and abbreviation tokens."""

from __future__ import annotations

import re

from icdoc.markup.ast import Document, Link, TextSpan, node_line
from icdoc.markup.macros import iter_inline_units

_WORD_RE = re.compile(r"[A-Za-z0-9]+")
_ABBREVIATION_RE = re.compile(r"[A-Z][A-Z0-9]+")

# targets with a URL scheme are outside the build tree and never checked
_EXTERNAL_TARGET_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.-]*://|mailto:")


def is_external_target(target: str) -> bool:
    return _EXTERNAL_TARGET_RE.match(target) is not None


def extract_links(doc: Document) -> list[tuple[str, int]]:
    """All local link targets with their source lines, in document order."""
    found: list[tuple[str, int]] = []
    for text, line, nodes in iter_inline_units(doc):
        for node in nodes:
            if isinstance(node, Link) and not is_external_target(node.target):
                found.append((node.target, node_line(line, text, node)))
    return found


def extract_abbreviations(doc: Document) -> set[tuple[str, int]]:
    """Capitalized tokens of two or more characters, with source lines.

    Only literal prose is scanned: macro arguments (term names, link
    targets and labels, reference ids) and rdl blocks never contribute
    tokens.  A token counts only when the whole word matches, so ``ADCs``
    contributes nothing while ``ADC`` and ``R2D2`` do.
    """
    found: set[tuple[str, int]] = set()
    for text, line, nodes in iter_inline_units(doc):
        for node in nodes:
            if not isinstance(node, TextSpan):
                continue
            for word in _WORD_RE.finditer(node.text):
                if _ABBREVIATION_RE.fullmatch(word.group()) is None:
                    continue
                offset = node.span[0] + word.start()
                found.add((word.group(), line + text.count("\n", 0, offset)))
    return found
