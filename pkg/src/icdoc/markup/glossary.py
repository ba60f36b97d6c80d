"""Glossaries: tab-separated term files and their merge policy.

A glossary file holds one ``TERM<TAB>definition`` entry per line.  The
first file loaded for a build is the central glossary; any further files
are local to the document.  Merging folds files in order, and a later
definition that disagrees with an earlier one loses: the earlier
definition is kept and the disagreement is recorded as a conflict for
the quality gates to report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

CENTRAL = "central"
LOCAL = "local"


class GlossaryFormatError(ValueError):
    """Raised for glossary files that do not follow the tab-separated form."""


@dataclass(frozen=True)
class GlossaryEntry:
    term: str
    definition: str
    origin: str  # CENTRAL or LOCAL


@dataclass(frozen=True)
class GlossaryConflict:
    term: str
    kept: str
    rejected: str


@dataclass
class Glossary:
    entries: dict[str, GlossaryEntry] = field(default_factory=dict)
    conflicts: list[GlossaryConflict] = field(default_factory=list)

    def __contains__(self, term: str) -> bool:
        return term in self.entries

    def definition(self, term: str) -> str | None:
        entry = self.entries.get(term)
        return entry.definition if entry else None

    def merge(self, other: Glossary) -> Glossary:
        """Fold ``other`` into this glossary, earlier definitions winning."""
        merged = Glossary(entries=dict(self.entries), conflicts=list(self.conflicts))
        for entry in other.entries.values():
            existing = merged.entries.get(entry.term)
            if existing is None:
                merged.entries[entry.term] = entry
            elif existing.definition != entry.definition:
                merged.conflicts.append(
                    GlossaryConflict(
                        term=entry.term, kept=existing.definition, rejected=entry.definition
                    )
                )
        merged.conflicts.extend(other.conflicts)
        return merged


def load_glossary(path: Path | str, origin: str = CENTRAL) -> Glossary:
    glossary = Glossary()
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if not raw.strip():
            continue
        if "\t" not in raw:
            raise GlossaryFormatError(f"{path}: line {lineno}: expected 'TERM<TAB>definition'")
        term, definition = raw.split("\t", 1)
        term = term.strip()
        if not term:
            raise GlossaryFormatError(f"{path}: line {lineno}: empty term name")
        if term in glossary.entries:
            raise GlossaryFormatError(f"{path}: line {lineno}: duplicate term {term!r}")
        glossary.entries[term] = GlossaryEntry(
            term=term, definition=definition.strip(), origin=origin
        )
    return glossary


def merge_glossaries(paths: list[Path | str]) -> Glossary:
    """Load and merge glossary files; the first file is the central one."""
    merged = Glossary()
    for position, path in enumerate(paths):
        origin = CENTRAL if position == 0 else LOCAL
        merged = merged.merge(load_glossary(path, origin))
    return merged
