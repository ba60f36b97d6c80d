"""Build, check, and serve orchestration plus the command line."""

from icdoc.pipeline.build import BuildOutcome, PipelineError, build, gates_dry_run
from icdoc.pipeline.check import check_artifacts
from icdoc.pipeline.manifest import Manifest

__all__ = [
    "BuildOutcome",
    "Manifest",
    "PipelineError",
    "build",
    "check_artifacts",
    "gates_dry_run",
]
