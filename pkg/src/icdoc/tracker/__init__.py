"""The central publication tracker: registry, persistence, HTTP interface."""

from icdoc.tracker.registry import (
    DocumentRecord,
    EventKind,
    Registry,
    Status,
    TrackerEvent,
    VersionRecord,
)

__all__ = [
    "DocumentRecord",
    "EventKind",
    "Registry",
    "Status",
    "TrackerEvent",
    "VersionRecord",
]
