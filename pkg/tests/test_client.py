from __future__ import annotations

import pytest

from conftest import make_tracker_client
from icdoc.pipeline.client import (
    TrackerClient,
    TrackerRejectedError,
    TrackerUnreachableError,
)
from icdoc.tracker.registry import EventKind, Status
from icdoc.versions import Version

SHA = "0" * 64


def test_ensure_registered_is_idempotent(registry, tracker_client):
    tracker_client.ensure_registered("icd-a")
    tracker_client.ensure_registered("icd-a")
    assert registry.get("icd-a").status is Status.DRAFT


def test_publish_version_round_trip(registry, tracker_client):
    tracker_client.ensure_registered("icd-a")
    changed = tracker_client.publish_version(
        "icd-a",
        Version(1, 0),
        src="git:abc",
        refs=[],
        build_location="builds/icd-a/1.0",
        artifacts=[("icd-a.html", SHA)],
    )
    assert changed == [{"doc_id": "icd-a", "status": "PUBLISHED", "status_reason": ""}]
    record = registry.get("icd-a")
    assert record.latest.artifacts == (("icd-a.html", SHA),)
    assert record.latest.src == "git:abc"


def test_publish_rejection_raises_with_status(tracker_client):
    tracker_client.ensure_registered("icd-a")
    tracker_client.publish_version(
        "icd-a", Version(1, 1), src="", refs=[], build_location="b", artifacts=[]
    )
    with pytest.raises(TrackerRejectedError) as err:
        tracker_client.publish_version(
            "icd-a", Version(1, 0), src="", refs=[], build_location="b", artifacts=[]
        )
    assert err.value.status_code == 409
    assert "does not increase" in err.value.detail


def test_report_check_failure_logs_event(registry, tracker_client):
    tracker_client.ensure_registered("icd-a")
    tracker_client.report_check_failure(
        "icd-a", path="conv.h", expected=SHA, actual="f" * 64, reporter="consumer"
    )
    kinds = [e.kind for e in registry.events("icd-a")]
    assert kinds == [EventKind.REGISTERED, EventKind.CHECK_FAILED]


def test_get_document_returns_none_for_unknown(tracker_client):
    assert tracker_client.get_document("icd-missing") is None


def test_get_document_returns_record(tracker_client):
    tracker_client.ensure_registered("icd-a")
    record = tracker_client.get_document("icd-a")
    assert record["doc_id"] == "icd-a"
    assert record["status"] == "DRAFT"
    assert record["events"][0]["kind"] == "REGISTERED"


def test_unreachable_endpoint_raises():
    client = TrackerClient("http://127.0.0.1:1")
    with pytest.raises(TrackerUnreachableError):
        client.ensure_registered("icd-a")
    with pytest.raises(TrackerUnreachableError):
        client.get_document("icd-a")
    client.close()


def test_context_manager_closes(registry):
    with make_tracker_client(registry) as client:
        client.ensure_registered("icd-a")
    assert registry.get("icd-a").status is Status.DRAFT
