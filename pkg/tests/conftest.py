from __future__ import annotations

from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from icdoc.pipeline.client import TrackerClient
from icdoc.tracker.api import create_app
from icdoc.tracker.registry import Registry

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def registry() -> Registry:
    return Registry()


def make_tracker_client(registry: Registry) -> TrackerClient:
    """A pipeline TrackerClient wired straight to an in-process app."""
    return TrackerClient("http://testserver", client=TestClient(create_app(registry)))


@pytest.fixture
def tracker_client(registry: Registry) -> TrackerClient:
    return make_tracker_client(registry)
