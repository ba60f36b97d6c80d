"""Drift detection: compare local artifacts against a publication manifest.

The manifest may live on disk or behind an HTTP URL.  Every artifact it
lists is re-hashed locally; a missing file or a digest mismatch is
drift.  When a tracker endpoint is supplied, each digest mismatch is
reported there as a check failure, and the tracker's knowledge of the
document is used to warn when a newer version has been published.  The
warning never changes the exit code; only drift does.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import httpx

from icdoc.pipeline.build import EXIT_DRIFT, EXIT_IO, EXIT_OK, PipelineError
from icdoc.pipeline.client import TrackerClient, TrackerRejectedError, TrackerUnreachableError
from icdoc.pipeline.manifest import Manifest, ManifestError, load_manifest, manifest_from_json
from icdoc.rdl.model import digest
from icdoc.versions import Version


@dataclass
class CheckOutcome:
    manifest: Manifest
    exit_code: int
    lines: list[str]


def _fetch_manifest(location: str) -> Manifest:
    if location.startswith(("http://", "https://")):
        try:
            response = httpx.get(location, timeout=10.0, follow_redirects=True)
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise PipelineError(EXIT_IO, f"cannot fetch manifest {location}: {exc}") from None
        try:
            return manifest_from_json(response.text)
        except ManifestError as exc:
            raise PipelineError(EXIT_IO, str(exc)) from None
    try:
        return load_manifest(location)
    except ManifestError as exc:
        raise PipelineError(EXIT_IO, str(exc)) from None


def check_artifacts(
    manifest_location: str,
    local_dir: Path | str,
    tracker: TrackerClient | None = None,
    reporter: str = "unknown",
) -> CheckOutcome:
    """Verify local artifact bytes against the manifest's digests."""
    local_dir = Path(local_dir)
    if not local_dir.is_dir():
        raise PipelineError(EXIT_IO, f"{local_dir} is not a directory")
    manifest = _fetch_manifest(manifest_location)

    lines: list[str] = []
    drifted = False
    for path, expected in manifest.artifacts:
        local_path = local_dir / path
        if not local_path.exists():
            drifted = True
            lines.append(f"DRIFT {path}: missing local copy")
            continue
        try:
            actual = digest(local_path.read_bytes())
        except OSError as exc:
            raise PipelineError(EXIT_IO, f"cannot read {local_path}: {exc}") from None
        if actual != expected:
            drifted = True
            lines.append(f"DRIFT {path}: expected {expected} got {actual}")
            if tracker is not None:
                try:
                    tracker.report_check_failure(
                        manifest.doc_id,
                        path=path,
                        expected=expected.hex,
                        actual=actual.hex,
                        reporter=reporter,
                    )
                except (TrackerUnreachableError, TrackerRejectedError) as exc:
                    lines.append(f"note: could not report check failure: {exc}")

    if tracker is not None:
        lines.extend(_stale_note(manifest, tracker))

    if not drifted:
        lines.append(f"OK: {len(manifest.artifacts)} artifacts match the manifest")
    return CheckOutcome(
        manifest=manifest,
        exit_code=EXIT_DRIFT if drifted else EXIT_OK,
        lines=lines,
    )


def _stale_note(manifest: Manifest, tracker: TrackerClient) -> list[str]:
    try:
        record = tracker.get_document(manifest.doc_id)
    except (TrackerUnreachableError, TrackerRejectedError) as exc:
        return [f"note: could not query tracker: {exc}"]
    if record is None or not record.get("versions"):
        return []
    latest = Version.parse(record["versions"][-1]["version"])
    if latest > manifest.version:
        return [
            f"note: {manifest.doc_id} {latest} is published; this manifest is for {manifest.version}"
        ]
    return []
