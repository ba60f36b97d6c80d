"""Atomic JSON persistence for the registry, and record serialization.

The whole registry state lives in one JSON file.  Saves write a
temporary file in the same directory and rename it over the target, so a
crash mid-write leaves the previous state intact.  The serialization
helpers here are also what the HTTP interface returns, keeping the wire
and disk forms identical.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from icdoc.tracker.registry import (
    DocumentRecord,
    EventKind,
    Status,
    TrackerEvent,
    VersionRecord,
)
from icdoc.versions import Version, VersionError

STATE_FORMAT = 1


class StateError(ValueError):
    """Raised for unreadable or structurally invalid state files."""


def version_record_to_json(record: VersionRecord) -> dict:
    return {
        "version": str(record.version),
        "src": record.src,
        "refs": [{"doc_id": d, "version": str(v)} for d, v in record.refs],
        "build_location": record.build_location,
        "artifacts": [{"path": p, "sha256": s} for p, s in record.artifacts],
        "recorded_at": record.recorded_at,
    }


def document_to_json(record: DocumentRecord) -> dict:
    return {
        "doc_id": record.doc_id,
        "status": record.status.value,
        "status_reason": record.status_reason,
        "versions": [version_record_to_json(v) for v in record.versions],
    }


def event_to_json(event: TrackerEvent) -> dict:
    return {
        "seq": event.seq,
        "kind": event.kind.value,
        "doc_id": event.doc_id,
        "payload": event.payload,
        "recorded_at": event.recorded_at,
    }


def _version_record_from_json(raw: dict) -> VersionRecord:
    return VersionRecord(
        version=Version.parse(raw["version"]),
        src=raw.get("src", ""),
        refs=tuple((r["doc_id"], Version.parse(r["version"])) for r in raw.get("refs", [])),
        build_location=raw.get("build_location", ""),
        artifacts=tuple((a["path"], a["sha256"]) for a in raw.get("artifacts", [])),
        recorded_at=raw.get("recorded_at", ""),
    )


def _document_from_json(raw: dict) -> DocumentRecord:
    return DocumentRecord(
        doc_id=raw["doc_id"],
        status=Status(raw["status"]),
        status_reason=raw.get("status_reason", ""),
        versions=[_version_record_from_json(v) for v in raw.get("versions", [])],
    )


def _event_from_json(raw: dict) -> TrackerEvent:
    return TrackerEvent(
        seq=raw["seq"],
        kind=EventKind(raw["kind"]),
        doc_id=raw["doc_id"],
        payload=raw.get("payload", {}),
        recorded_at=raw.get("recorded_at", ""),
    )


def save_state(
    path: Path,
    documents: dict[str, DocumentRecord],
    events: list[TrackerEvent],
    next_seq: int,
) -> None:
    state = {
        "format": STATE_FORMAT,
        "next_seq": next_seq,
        "documents": [document_to_json(r) for r in documents.values()],
        "events": [event_to_json(e) for e in events],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    descriptor, temp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(descriptor, "w", encoding="utf-8") as handle:
            json.dump(state, handle, indent=2, ensure_ascii=False)
            handle.write("\n")
        os.replace(temp_name, path)
    except BaseException:
        try:
            os.unlink(temp_name)
        except OSError:
            pass
        raise


def load_state(path: Path) -> tuple[dict[str, DocumentRecord], list[TrackerEvent], int]:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise StateError(f"cannot read state file {path}: {exc}") from None
    try:
        if raw.get("format") != STATE_FORMAT:
            raise StateError(f"unsupported state format {raw.get('format')!r}")
        documents = {d["doc_id"]: _document_from_json(d) for d in raw.get("documents", [])}
        events = [_event_from_json(e) for e in raw.get("events", [])]
        next_seq = raw["next_seq"]
    except (KeyError, TypeError, ValueError, VersionError) as exc:
        if isinstance(exc, StateError):
            raise
        raise StateError(f"state file {path} is structurally invalid: {exc}") from None
    if events and next_seq <= events[-1].seq:
        raise StateError(f"state file {path} has an inconsistent sequence counter")
    return documents, events, next_seq
