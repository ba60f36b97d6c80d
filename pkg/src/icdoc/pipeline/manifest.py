"""The publication manifest: what a build produced, pinned by digest.

A manifest names the document and version, the source revision the
build came from, the exact references the document makes, the digest of
every artifact, and optionally the canonical location the publication
lives at.  Serialization is deterministic so repeated builds of the same
inputs yield byte-identical manifests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from icdoc.rdl.model import Digest
from icdoc.versions import Version, VersionError


class ManifestError(ValueError):
    """Raised for manifests that cannot be read or fail validation."""


@dataclass(frozen=True)
class Manifest:
    doc_id: str
    version: Version
    src: str
    refs: tuple[tuple[str, Version], ...]
    artifacts: tuple[tuple[str, Digest], ...]
    build_location: str | None = None

    def __post_init__(self) -> None:
        paths = [path for path, _digest in self.artifacts]
        if len(paths) != len(set(paths)):
            raise ManifestError("artifact paths must be unique")


def manifest_to_json(manifest: Manifest) -> str:
    payload = {
        "doc_id": manifest.doc_id,
        "version": str(manifest.version),
        "src": manifest.src,
        "refs": [{"doc_id": d, "version": str(v)} for d, v in manifest.refs],
        "artifacts": [{"path": p, "sha256": digest.hex} for p, digest in manifest.artifacts],
        "build_location": manifest.build_location,
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def manifest_from_json(text: str) -> Manifest:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ManifestError("manifest must be a JSON object")
    try:
        return Manifest(
            doc_id=raw["doc_id"],
            version=Version.parse(raw["version"]),
            src=raw.get("src", ""),
            refs=tuple(
                (r["doc_id"], Version.parse(r["version"])) for r in raw.get("refs", [])
            ),
            artifacts=tuple(
                (a["path"], Digest(hex=a["sha256"])) for a in raw.get("artifacts", [])
            ),
            build_location=raw.get("build_location"),
        )
    except (KeyError, TypeError, ValueError, VersionError) as exc:
        if isinstance(exc, ManifestError):
            raise
        raise ManifestError(f"manifest is structurally invalid: {exc}") from None


def load_manifest(path: Path | str) -> Manifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from None
    return manifest_from_json(text)
