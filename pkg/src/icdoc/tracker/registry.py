"""The document registry and its status state machine.

Every tracked document is DRAFT, PUBLISHED, FAILED, or
REVISION_REQUIRED.  A document is REVISION_REQUIRED exactly when some
reference pinned by its latest published version points at a version of
the referenced document that is no longer that document's latest
published one; the judgement rests purely on version order, never on
timestamps.  FAILED is set by an explicit build-failure report and
sticks until the document's next successful publication.

References always pin exact published versions, and the document-level
reference graph (the union of every version's pins) is kept acyclic by
rejecting any publication that would close a cycle.

All mutations append to an event log with strictly increasing sequence
numbers and, when the registry is bound to a state file, persist the
whole state atomically before returning.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable

from icdoc.versions import Version

_DOC_ID_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_SHA256_RE = re.compile(r"[0-9a-f]{64}")


class Status(str, Enum):
    DRAFT = "DRAFT"
    PUBLISHED = "PUBLISHED"
    FAILED = "FAILED"
    REVISION_REQUIRED = "REVISION_REQUIRED"


class EventKind(str, Enum):
    REGISTERED = "REGISTERED"
    PUBLISHED = "PUBLISHED"
    BUILD_FAILED = "BUILD_FAILED"
    CHECK_FAILED = "CHECK_FAILED"


class TrackerError(Exception):
    """Base class for registry rejections."""


class UnknownDocumentError(TrackerError):
    pass


class DocumentExistsError(TrackerError):
    pass


class InvalidRequestError(TrackerError):
    pass


class VersionOrderError(TrackerError):
    pass


class DanglingReferenceError(TrackerError):
    pass


class ReferenceCycleError(TrackerError):
    pass


@dataclass(frozen=True)
class VersionRecord:
    version: Version
    src: str
    refs: tuple[tuple[str, Version], ...]
    build_location: str
    artifacts: tuple[tuple[str, str], ...]  # (path, sha256 hex)
    recorded_at: str  # ISO timestamp, for display only


@dataclass
class DocumentRecord:
    doc_id: str
    status: Status = Status.DRAFT
    status_reason: str = ""
    versions: list[VersionRecord] = field(default_factory=list)

    @property
    def latest(self) -> VersionRecord | None:
        return self.versions[-1] if self.versions else None


@dataclass(frozen=True)
class TrackerEvent:
    seq: int
    kind: EventKind
    doc_id: str
    payload: dict
    recorded_at: str


@dataclass(frozen=True)
class StatusChange:
    doc_id: str
    status: Status
    status_reason: str


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class Registry:
    """In-memory registry, optionally bound to a JSON state file."""

    def __init__(
        self,
        state_path: Path | None = None,
        clock: Callable[[], str] = _utc_now,
    ) -> None:
        self._documents: dict[str, DocumentRecord] = {}
        self._events: list[TrackerEvent] = []
        self._next_seq = 1
        self._lock = threading.Lock()
        self._state_path = state_path
        self._clock = clock

    @classmethod
    def open(cls, state_path: Path | str, clock: Callable[[], str] = _utc_now) -> Registry:
        """Load a registry from a state file, starting fresh if it is absent."""
        from icdoc.tracker import store

        path = Path(state_path)
        registry = cls(state_path=path, clock=clock)
        if path.exists():
            documents, events, next_seq = store.load_state(path)
            registry._documents = documents
            registry._events = events
            registry._next_seq = next_seq
        return registry

    # -- queries ---------------------------------------------------------

    def list_documents(self) -> list[DocumentRecord]:
        with self._lock:
            return list(self._documents.values())

    def get(self, doc_id: str) -> DocumentRecord:
        with self._lock:
            return self._require(doc_id)

    def events(self, doc_id: str | None = None) -> list[TrackerEvent]:
        with self._lock:
            if doc_id is None:
                return list(self._events)
            return [e for e in self._events if e.doc_id == doc_id]

    # -- mutations -------------------------------------------------------

    def register_document(self, doc_id: str) -> DocumentRecord:
        with self._lock:
            if _DOC_ID_RE.fullmatch(doc_id) is None:
                raise InvalidRequestError(f"invalid document id {doc_id!r}")
            if doc_id in self._documents:
                raise DocumentExistsError(f"document {doc_id!r} is already registered")
            record = DocumentRecord(doc_id=doc_id)
            self._documents[doc_id] = record
            self._append_event(EventKind.REGISTERED, doc_id, {})
            self._persist()
            return record

    def record_publication(
        self,
        doc_id: str,
        version: Version,
        src: str,
        refs: Iterable[tuple[str, Version]],
        build_location: str,
        artifacts: Iterable[tuple[str, str]],
    ) -> list[StatusChange]:
        """Append a published version and return every record whose status moved."""
        with self._lock:
            record = self._require(doc_id)
            refs = tuple(refs)
            artifacts = tuple(artifacts)

            if record.versions and version <= record.versions[-1].version:
                raise VersionOrderError(
                    f"version {version} does not increase over {record.versions[-1].version}"
                )
            if not build_location.strip():
                raise InvalidRequestError("build_location must not be empty")
            paths = [path for path, _sha in artifacts]
            if len(paths) != len(set(paths)):
                raise InvalidRequestError("artifact paths must be unique")
            for path, sha in artifacts:
                if not path:
                    raise InvalidRequestError("artifact path must not be empty")
                if _SHA256_RE.fullmatch(sha) is None:
                    raise InvalidRequestError(
                        f"artifact digest for {path!r} must be 64 lowercase hex characters"
                    )

            seen_refs = set()
            for ref_id, ref_version in refs:
                if (ref_id, ref_version) in seen_refs:
                    raise InvalidRequestError(f"duplicate reference {ref_id} {ref_version}")
                seen_refs.add((ref_id, ref_version))
                if ref_id == doc_id:
                    raise ReferenceCycleError("a document may not reference itself")
                target = self._documents.get(ref_id)
                if target is None or all(v.version != ref_version for v in target.versions):
                    raise DanglingReferenceError(
                        f"reference {ref_id} {ref_version} is not a published version"
                    )
            self._reject_cycles(doc_id, [ref_id for ref_id, _v in refs])

            before = {d: (r.status, r.status_reason) for d, r in self._documents.items()}
            record.versions.append(
                VersionRecord(
                    version=version,
                    src=src,
                    refs=refs,
                    build_location=build_location,
                    artifacts=artifacts,
                    recorded_at=self._clock(),
                )
            )
            record.status = Status.PUBLISHED
            record.status_reason = ""
            self._recompute_locked()

            changed = [
                StatusChange(doc_id=d, status=r.status, status_reason=r.status_reason)
                for d, r in self._documents.items()
                if (r.status, r.status_reason) != before[d]
            ]
            self._append_event(
                EventKind.PUBLISHED,
                doc_id,
                {"version": str(version), "changed": [c.doc_id for c in changed]},
            )
            self._persist()
            return changed

    def record_build_failure(self, doc_id: str, summary: str) -> DocumentRecord:
        with self._lock:
            record = self._require(doc_id)
            record.status = Status.FAILED
            record.status_reason = summary
            self._append_event(EventKind.BUILD_FAILED, doc_id, {"summary": summary})
            self._persist()
            return record

    def report_check_failure(
        self, doc_id: str, path: str, expected: str, actual: str, reporter: str
    ) -> TrackerEvent:
        """Log a drift report from a consumer; statuses are untouched."""
        with self._lock:
            self._require(doc_id)
            for label, value in (("expected", expected), ("actual", actual)):
                if _SHA256_RE.fullmatch(value) is None:
                    raise InvalidRequestError(
                        f"{label} digest must be 64 lowercase hex characters"
                    )
            event = self._append_event(
                EventKind.CHECK_FAILED,
                doc_id,
                {"path": path, "expected": expected, "actual": actual, "reporter": reporter},
            )
            self._persist()
            return event

    def recompute_statuses(self) -> list[StatusChange]:
        """Re-derive stale-reference statuses; idempotent."""
        with self._lock:
            changed = self._recompute_locked()
            if changed:
                self._persist()
            return changed

    # -- internals -------------------------------------------------------

    def _require(self, doc_id: str) -> DocumentRecord:
        record = self._documents.get(doc_id)
        if record is None:
            raise UnknownDocumentError(f"unknown document {doc_id!r}")
        return record

    def _latest_version(self, doc_id: str) -> Version | None:
        record = self._documents.get(doc_id)
        if record is None or not record.versions:
            return None
        return record.versions[-1].version

    def _recompute_locked(self) -> list[StatusChange]:
        changed = []
        for record in self._documents.values():
            if not record.versions or record.status is Status.FAILED:
                continue
            stale = []
            for ref_id, pinned in record.versions[-1].refs:
                latest = self._latest_version(ref_id)
                if latest is not None and pinned < latest:
                    stale.append(
                        f"pinned {ref_id} {pinned} is older than latest published {latest}"
                    )
            status = Status.REVISION_REQUIRED if stale else Status.PUBLISHED
            reason = "; ".join(stale)
            if (record.status, record.status_reason) != (status, reason):
                record.status = status
                record.status_reason = reason
                changed.append(
                    StatusChange(doc_id=record.doc_id, status=status, status_reason=reason)
                )
        return changed

    def _reject_cycles(self, publisher: str, new_ref_ids: list[str]) -> None:
        """Refuse references that would close a cycle in the document graph."""
        edges: dict[str, set[str]] = {}
        for record in self._documents.values():
            targets = edges.setdefault(record.doc_id, set())
            for version in record.versions:
                targets.update(ref_id for ref_id, _v in version.refs)
        for ref_id in new_ref_ids:
            # depth-first search from the referenced document back to the publisher
            stack, seen = [ref_id], set()
            while stack:
                node = stack.pop()
                if node == publisher:
                    raise ReferenceCycleError(
                        f"reference from {publisher!r} to {ref_id!r} would close a cycle"
                    )
                if node in seen:
                    continue
                seen.add(node)
                stack.extend(edges.get(node, ()))

    def _append_event(self, kind: EventKind, doc_id: str, payload: dict) -> TrackerEvent:
        event = TrackerEvent(
            seq=self._next_seq,
            kind=kind,
            doc_id=doc_id,
            payload=payload,
            recorded_at=self._clock(),
        )
        self._events.append(event)
        self._next_seq += 1
        return event

    def _persist(self) -> None:
        if self._state_path is not None:
            from icdoc.tracker import store

            store.save_state(self._state_path, self._documents, self._events, self._next_seq)
