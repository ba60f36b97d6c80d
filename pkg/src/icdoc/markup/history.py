"""Document history files: one ``version<TAB>date<TAB>author<TAB>summary`` per line.

Entries must appear in strictly increasing version order; the document
log macro renders them newest-first.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from icdoc.versions import Version, VersionError


class HistoryFormatError(ValueError):
    """Raised for malformed or mis-ordered history files."""


@dataclass(frozen=True)
class HistoryEntry:
    version: Version
    date: str
    author: str
    summary: str


def load_history(path: Path | str) -> list[HistoryEntry]:
    entries: list[HistoryEntry] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) != 4:
            raise HistoryFormatError(
                f"{path}: line {lineno}: expected 'version<TAB>date<TAB>author<TAB>summary'"
            )
        try:
            version = Version.parse(parts[0])
        except VersionError as exc:
            raise HistoryFormatError(f"{path}: line {lineno}: {exc}") from None
        if entries and version <= entries[-1].version:
            raise HistoryFormatError(
                f"{path}: line {lineno}: version {version} does not increase over {entries[-1].version}"
            )
        entries.append(
            HistoryEntry(
                version=version,
                date=parts[1].strip(),
                author=parts[2].strip(),
                summary=parts[3].strip(),
            )
        )
    return entries
