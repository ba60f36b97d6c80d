from __future__ import annotations

import json

import pytest

from icdoc.tracker.registry import Registry, Status
from icdoc.tracker.store import StateError, load_state
from icdoc.versions import Version

SHA = "0" * 64


def _seed(registry: Registry) -> None:
    registry.register_document("icd-a")
    registry.register_document("icd-b")
    registry.record_publication(
        "icd-a",
        Version(1, 0),
        src="git:icd-a",
        refs=[],
        build_location="builds/icd-a/1.0",
        artifacts=[("icd-a.html", SHA), ("conv.h", "f" * 64)],
    )
    registry.record_publication(
        "icd-b",
        Version(1, 0),
        src="git:icd-b",
        refs=[("icd-a", Version(1, 0))],
        build_location="builds/icd-b/1.0",
        artifacts=[],
    )
    registry.record_publication(
        "icd-a",
        Version(1, 1),
        src="git:icd-a",
        refs=[],
        build_location="builds/icd-a/1.1",
        artifacts=[],
    )
    registry.report_check_failure("icd-a", "conv.h", SHA, "f" * 64, "consumer")


def test_state_round_trips_through_the_file(tmp_path):
    path = tmp_path / "tracker" / "state.json"
    original = Registry.open(path)
    _seed(original)

    reopened = Registry.open(path)
    assert {r.doc_id for r in reopened.list_documents()} == {"icd-a", "icd-b"}
    assert reopened.get("icd-a").status is Status.PUBLISHED
    assert reopened.get("icd-b").status is Status.REVISION_REQUIRED
    assert reopened.get("icd-b").status_reason == (
        "pinned icd-a 1.0 is older than latest published 1.1"
    )
    assert reopened.get("icd-a").versions == original.get("icd-a").versions
    assert reopened.events() == original.events()

    # the loaded registry keeps numbering where the old one stopped
    last = original.events()[-1].seq
    reopened.record_build_failure("icd-a", "later failure")
    assert reopened.events()[-1].seq == last + 1


def test_open_without_file_starts_empty(tmp_path):
    registry = Registry.open(tmp_path / "absent.json")
    assert registry.list_documents() == []
    assert registry.events() == []


def test_state_file_is_valid_json_with_format_marker(tmp_path):
    path = tmp_path / "state.json"
    registry = Registry.open(path)
    registry.register_document("icd-a")
    raw = json.loads(path.read_text())
    assert raw["format"] == 1
    assert raw["next_seq"] == 2
    assert [d["doc_id"] for d in raw["documents"]] == ["icd-a"]
    assert [e["kind"] for e in raw["events"]] == ["REGISTERED"]
    assert path.read_text().endswith("\n")


def test_artifacts_and_refs_survive_serialization(tmp_path):
    path = tmp_path / "state.json"
    registry = Registry.open(path)
    _seed(registry)
    raw = json.loads(path.read_text())
    published = next(d for d in raw["documents"] if d["doc_id"] == "icd-a")
    assert published["versions"][0]["artifacts"] == [
        {"path": "icd-a.html", "sha256": SHA},
        {"path": "conv.h", "sha256": "f" * 64},
    ]
    consumer = next(d for d in raw["documents"] if d["doc_id"] == "icd-b")
    assert consumer["versions"][0]["refs"] == [{"doc_id": "icd-a", "version": "1.0"}]


def test_versions_with_and_without_patch_round_trip(tmp_path):
    path = tmp_path / "state.json"
    registry = Registry.open(path)
    registry.register_document("icd-a")
    registry.record_publication(
        "icd-a", Version(1, 0), src="", refs=[], build_location="b", artifacts=[]
    )
    registry.record_publication(
        "icd-a", Version(1, 0, 1), src="", refs=[], build_location="b", artifacts=[]
    )
    reopened = Registry.open(path)
    assert [str(v.version) for v in reopened.get("icd-a").versions] == ["1.0", "1.0.1"]


def test_corrupt_json_raises_state_error(tmp_path):
    path = tmp_path / "state.json"
    path.write_text("{ nope")
    with pytest.raises(StateError):
        load_state(path)


def test_unsupported_format_rejected(tmp_path):
    path = tmp_path / "state.json"
    path.write_text(json.dumps({"format": 99, "next_seq": 1, "documents": [], "events": []}))
    with pytest.raises(StateError) as err:
        load_state(path)
    assert "format" in str(err.value)


def test_missing_fields_rejected(tmp_path):
    path = tmp_path / "state.json"
    path.write_text(json.dumps({"format": 1, "documents": [], "events": []}))
    with pytest.raises(StateError):
        load_state(path)


def test_inconsistent_sequence_counter_rejected(tmp_path):
    path = tmp_path / "state.json"
    state = {
        "format": 1,
        "next_seq": 1,
        "documents": [],
        "events": [
            {"seq": 5, "kind": "REGISTERED", "doc_id": "icd-a", "payload": {}, "recorded_at": ""}
        ],
    }
    path.write_text(json.dumps(state))
    with pytest.raises(StateError) as err:
        load_state(path)
    assert "sequence" in str(err.value)


def test_failed_save_leaves_previous_state_intact(tmp_path, monkeypatch):
    path = tmp_path / "state.json"
    registry = Registry.open(path)
    registry.register_document("icd-a")
    before = path.read_text()

    import icdoc.tracker.store as store_module

    def broken_replace(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(store_module.os, "replace", broken_replace)
    with pytest.raises(OSError):
        registry.register_document("icd-b")
    monkeypatch.undo()

    assert path.read_text() == before
    assert list(tmp_path.glob("*.tmp")) == []
    reopened = Registry.open(path)
    assert {r.doc_id for r in reopened.list_documents()} == {"icd-a"}
