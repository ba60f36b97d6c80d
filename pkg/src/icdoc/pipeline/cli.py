"""The ``icdoc`` command line.

* ``icdoc build SOURCE --out DIR --mode draft|publish [...]``
* ``icdoc check --manifest PATH_OR_URL --local DIR [...]``
* ``icdoc serve --state FILE [--listen HOST:PORT]``
* ``icdoc gates SOURCE [...]``
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from icdoc.gates.config import GateConfig, GateConfigError, load_gate_config
from icdoc.gates.report import report_to_text
from icdoc.pipeline.build import (
    DRAFT,
    EXIT_IO,
    PUBLISH,
    PipelineError,
    build,
    gates_dry_run,
)
from icdoc.pipeline.check import check_artifacts
from icdoc.pipeline.client import TrackerClient


def _load_config(path: str | None) -> GateConfig:
    if path is None:
        return GateConfig()
    try:
        return load_gate_config(path)
    except GateConfigError as exc:
        raise PipelineError(EXIT_IO, str(exc)) from None


def _fail(exc: PipelineError) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(exc.exit_code)


@click.group()
def main() -> None:
    """Build, check, and track interface control documents."""


@main.command(name="build")
@click.argument("source", type=click.Path(exists=False, path_type=Path))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path), help="Output directory.")
@click.option("--mode", required=True, type=click.Choice([DRAFT, PUBLISH]), help="Build mode.")
@click.option("--config", "config_path", type=click.Path(path_type=Path), help="Gate configuration file (JSON).")
@click.option("--glossary", "glossary_paths", multiple=True, type=click.Path(path_type=Path), help="Glossary file; first use names the central one.")
@click.option("--history", "history_path", type=click.Path(path_type=Path), help="Document history file.")
@click.option("--tracker", "tracker_url", help="Tracker endpoint URL.")
@click.option("--src", default="unknown", help="Source revision recorded in the manifest.")
@click.option("--canonical", "canonical_location", help="Canonical location of the published build.")
def build_command(
    source: Path,
    out_dir: Path,
    mode: str,
    config_path: Path | None,
    glossary_paths: tuple[Path, ...],
    history_path: Path | None,
    tracker_url: str | None,
    src: str,
    canonical_location: str | None,
) -> None:
    """Build SOURCE into rendered artifacts plus a manifest."""
    tracker = TrackerClient(tracker_url) if tracker_url else None
    try:
        outcome = build(
            source,
            out_dir,
            mode,
            config=_load_config(config_path),
            glossary_paths=glossary_paths,
            history_path=history_path,
            tracker=tracker,
            src=src,
            canonical_location=canonical_location,
        )
    except PipelineError as exc:
        _fail(exc)
    finally:
        if tracker is not None:
            tracker.close()
    click.echo(report_to_text(outcome.report))
    for change in outcome.status_changes:
        click.echo(
            f"status: {change['doc_id']} -> {change['status']}"
            + (f" ({change['status_reason']})" if change.get("status_reason") else "")
        )
    sys.exit(outcome.exit_code)


@main.command(name="check")
@click.option("--manifest", "manifest_location", required=True, help="Manifest path or URL.")
@click.option("--local", "local_dir", required=True, type=click.Path(path_type=Path), help="Directory holding the local artifact copies.")
@click.option("--tracker", "tracker_url", help="Tracker endpoint URL for drift reports.")
@click.option("--reporter", default="unknown", help="Name recorded with drift reports.")
def check_command(
    manifest_location: str,
    local_dir: Path,
    tracker_url: str | None,
    reporter: str,
) -> None:
    """Compare local artifacts against a publication manifest."""
    tracker = TrackerClient(tracker_url) if tracker_url else None
    try:
        outcome = check_artifacts(
            manifest_location, local_dir, tracker=tracker, reporter=reporter
        )
    except PipelineError as exc:
        _fail(exc)
    finally:
        if tracker is not None:
            tracker.close()
    for line in outcome.lines:
        click.echo(line)
    sys.exit(outcome.exit_code)


@main.command(name="serve")
@click.option("--state", "state_path", required=True, type=click.Path(path_type=Path), help="Registry state file (JSON).")
@click.option("--listen", default="127.0.0.1:8765", show_default=True, help="HOST:PORT to bind.")
def serve_command(state_path: Path, listen: str) -> None:
    """Run the tracker service over a persistent state file."""
    import uvicorn

    from icdoc.tracker.api import create_app
    from icdoc.tracker.registry import Registry
    from icdoc.tracker.store import StateError

    host, _sep, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        _fail(PipelineError(EXIT_IO, f"--listen expects HOST:PORT, got {listen!r}"))
    try:
        registry = Registry.open(state_path)
    except StateError as exc:
        _fail(PipelineError(EXIT_IO, str(exc)))
    try:
        uvicorn.run(create_app(registry), host=host, port=int(port_text), log_level="info")
    except OSError as exc:
        _fail(PipelineError(EXIT_IO, f"cannot serve on {listen}: {exc}"))


@main.command(name="gates")
@click.argument("source", type=click.Path(exists=False, path_type=Path))
@click.option("--config", "config_path", type=click.Path(path_type=Path), help="Gate configuration file (JSON).")
@click.option("--glossary", "glossary_paths", multiple=True, type=click.Path(path_type=Path), help="Glossary file; first use names the central one.")
def gates_command(
    source: Path, config_path: Path | None, glossary_paths: tuple[Path, ...]
) -> None:
    """Run the quality gates without building anything."""
    try:
        report, exit_code = gates_dry_run(
            source, config=_load_config(config_path), glossary_paths=glossary_paths
        )
    except PipelineError as exc:
        _fail(exc)
    click.echo(report_to_text(report))
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
