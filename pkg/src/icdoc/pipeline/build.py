"""Build orchestration: from one source file to published artifacts.

The pipeline runs parse, register-map parse, glossary merge, macro
expansion, quality gates, rendering, header generation, artifact
digesting, and manifest writing, in that order.  Publication builds stop
at a failing gate report without writing anything or touching the
tracker; draft builds always write their outputs and never touch the
tracker.  Only a successful publication notifies the tracker.

Exit codes double as the outcome classification:

* 0 success
* 1 failing gates on a publication build
* 2 syntax errors in the document or a register-description block
* 3 input/output or configuration trouble
* 4 artifact drift (from the check command)
* 5 tracker rejection
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from icdoc.errors import ParseError
from icdoc.gates.config import GateConfig
from icdoc.gates.report import FAIL, GateReport, report_to_text
from icdoc.gates.rules import run_gates
from icdoc.markup.ast import Document
from icdoc.markup.glossary import Glossary, GlossaryFormatError, merge_glossaries
from icdoc.markup.history import HistoryEntry, HistoryFormatError, load_history
from icdoc.markup.html import render
from icdoc.markup.macros import document_refs, expand_macros
from icdoc.markup.parser import parse_document
from icdoc.pipeline.client import TrackerClient, TrackerRejectedError, TrackerUnreachableError
from icdoc.pipeline.manifest import Manifest, manifest_to_json
from icdoc.rdl.headers import InvalidRegisterMapError, generate_header
from icdoc.rdl.model import RegisterMap, digest
from icdoc.rdl.parser import parse_rdl
from icdoc.rdl.tables import render_tables
from icdoc.versions import Version

EXIT_OK = 0
EXIT_GATES = 1
EXIT_SYNTAX = 2
EXIT_IO = 3
EXIT_DRIFT = 4
EXIT_TRACKER = 5

DRAFT = "draft"
PUBLISH = "publish"

REPORT_FILENAME = "report.txt"
MANIFEST_FILENAME = "manifest.json"


class PipelineError(Exception):
    """A pipeline failure carrying the exit code it maps to."""

    def __init__(self, exit_code: int, message: str) -> None:
        super().__init__(message)
        self.exit_code = exit_code


@dataclass
class BuildOutcome:
    report: GateReport
    exit_code: int
    outputs: dict[str, Path] = field(default_factory=dict)
    manifest: Manifest | None = None
    status_changes: list[dict] = field(default_factory=list)


def _read_source(source_path: Path) -> str:
    try:
        return source_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PipelineError(EXIT_IO, f"cannot read {source_path}: {exc}") from None


def _parse(source_path: Path, text: str) -> Document:
    try:
        return parse_document(text)
    except ParseError as exc:
        raise PipelineError(EXIT_SYNTAX, f"{source_path}: {exc}") from None


def _parse_maps(source_path: Path, doc: Document) -> list[RegisterMap]:
    maps = []
    for block in doc.rdl_blocks():
        try:
            maps.append(parse_rdl(block.source))
        except ParseError as exc:
            doc_line = block.fence_open + exc.line
            raise PipelineError(
                EXIT_SYNTAX, f"{source_path}: line {doc_line}: {exc.message}"
            ) from None
    return maps


def _load_inputs(
    glossary_paths: tuple[Path, ...], history_path: Path | None
) -> tuple[Glossary, list[HistoryEntry]]:
    try:
        glossary = merge_glossaries(list(glossary_paths))
    except (OSError, GlossaryFormatError) as exc:
        raise PipelineError(EXIT_IO, f"cannot load glossary: {exc}") from None
    history: list[HistoryEntry] = []
    if history_path is not None:
        try:
            history = load_history(history_path)
        except (OSError, HistoryFormatError) as exc:
            raise PipelineError(EXIT_IO, f"cannot load history: {exc}") from None
    return glossary, history


def _resolve_refs(doc: Document, tracker: TrackerClient | None) -> dict:
    """Look up each referenced (document, version) pin on the tracker.

    A pin resolves to the build location of that exact published
    version.  Without a tracker every pin stays unresolved.
    """
    table: dict[tuple[str, Version], str | None] = {}
    if tracker is None:
        return table
    cache: dict[str, dict | None] = {}
    for ref_id, version in document_refs(doc):
        if ref_id not in cache:
            try:
                cache[ref_id] = tracker.get_document(ref_id)
            except TrackerUnreachableError as exc:
                raise PipelineError(EXIT_IO, str(exc)) from None
            except TrackerRejectedError as exc:
                raise PipelineError(EXIT_TRACKER, str(exc)) from None
        record = cache[ref_id]
        if record is None:
            continue
        for version_record in record.get("versions", []):
            if Version.parse(version_record["version"]) == version:
                table[(ref_id, version)] = version_record.get("build_location") or None
                break
    return table


def build(
    source_path: Path | str,
    out_dir: Path | str,
    mode: str,
    config: GateConfig | None = None,
    glossary_paths: tuple[Path, ...] = (),
    history_path: Path | None = None,
    tracker: TrackerClient | None = None,
    src: str = "unknown",
    canonical_location: str | None = None,
) -> BuildOutcome:
    """Run the full build for one document.

    Raises PipelineError for syntax, input/output, and tracker failures;
    a failing gate verdict on a publication build comes back as a normal
    outcome with exit code 1 and nothing written.
    """
    if mode not in (DRAFT, PUBLISH):
        raise PipelineError(EXIT_IO, f"unknown build mode {mode!r}")
    source_path = Path(source_path)
    out_dir = Path(out_dir)
    config = config if config is not None else GateConfig()

    doc = _parse(source_path, _read_source(source_path))
    maps = _parse_maps(source_path, doc)
    glossary, history = _load_inputs(glossary_paths, history_path)
    refs = _resolve_refs(doc, tracker)
    expanded = expand_macros(doc, glossary, history, refs)

    source_dir = source_path.parent

    def link_resolver(target: str) -> bool:
        return (source_dir / target).exists()

    report = run_gates(expanded, maps, glossary, config, link_resolver)

    if mode == PUBLISH and report.verdict == FAIL:
        return BuildOutcome(report=report, exit_code=EXIT_GATES)

    table_fragments = [render_tables(m) for m in maps]
    page = render(expanded, table_fragments)

    doc_id = doc.doc_id
    version = doc.version
    artifacts: list[tuple[str, bytes]] = [(f"{doc_id}.html", page)]
    seen_names = {artifacts[0][0]}
    for rmap in maps:
        filename = f"{rmap.name}.h"
        if filename in seen_names:
            raise PipelineError(
                EXIT_IO, f"duplicate address map name '{rmap.name}' across rdl blocks"
            )
        seen_names.add(filename)
        try:
            header = generate_header(rmap, doc_id, version, strict=(mode == PUBLISH))
        except InvalidRegisterMapError as exc:
            raise PipelineError(EXIT_GATES, f"{source_path}: {exc}") from None
        artifacts.append((filename, header))

    manifest = Manifest(
        doc_id=doc_id,
        version=version,
        src=src,
        refs=tuple(document_refs(doc)),
        artifacts=tuple(
            sorted(((name, digest(data)) for name, data in artifacts), key=lambda a: a[0])
        ),
        build_location=canonical_location,
    )

    outputs: dict[str, Path] = {}
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, data in artifacts:
            path = out_dir / name
            path.write_bytes(data)
            outputs[name] = path
        manifest_path = out_dir / MANIFEST_FILENAME
        manifest_path.write_text(manifest_to_json(manifest), encoding="utf-8")
        outputs[MANIFEST_FILENAME] = manifest_path
        report_path = out_dir / REPORT_FILENAME
        report_path.write_text(report_to_text(report) + "\n", encoding="utf-8")
        outputs[REPORT_FILENAME] = report_path
    except OSError as exc:
        raise PipelineError(EXIT_IO, f"cannot write outputs to {out_dir}: {exc}") from None

    status_changes: list[dict] = []
    if mode == PUBLISH and tracker is not None:
        try:
            tracker.ensure_registered(doc_id)
            status_changes = tracker.publish_version(
                doc_id,
                version,
                src=src,
                refs=list(manifest.refs),
                build_location=canonical_location or "",
                artifacts=[(name, d.hex) for name, d in manifest.artifacts],
            )
        except TrackerUnreachableError as exc:
            raise PipelineError(EXIT_IO, str(exc)) from None
        except TrackerRejectedError as exc:
            raise PipelineError(EXIT_TRACKER, str(exc)) from None

    return BuildOutcome(
        report=report,
        exit_code=EXIT_OK,
        outputs=outputs,
        manifest=manifest,
        status_changes=status_changes,
    )


def gates_dry_run(
    source_path: Path | str,
    config: GateConfig | None = None,
    glossary_paths: tuple[Path, ...] = (),
) -> tuple[GateReport, int]:
    """Run the gates alone: no outputs, no tracker, refs stay unresolved."""
    source_path = Path(source_path)
    config = config if config is not None else GateConfig()
    doc = _parse(source_path, _read_source(source_path))
    maps = _parse_maps(source_path, doc)
    glossary, _history = _load_inputs(glossary_paths, None)
    expanded = expand_macros(doc, glossary, [], {})

    source_dir = source_path.parent

    def link_resolver(target: str) -> bool:
        return (source_dir / target).exists()

    report = run_gates(expanded, maps, glossary, config, link_resolver)
    return report, (EXIT_GATES if report.verdict == FAIL else EXIT_OK)
