"""HTTP+JSON interface over a Registry.

Routes:

* ``POST /documents``                      register a document (201, 409 conflict)
* ``POST /documents/{id}/versions``        record a publication (201 with changed
  statuses, 404 unknown, 409 version conflict, 422 rejected)
* ``POST /documents/{id}/build-failures``  mark a build failure (201)
* ``POST /documents/{id}/check-failures``  log consumer drift (201)
* ``GET /documents``                       all records
* ``GET /documents/{id}``                  one record with its events (404)
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from icdoc.tracker import store
from icdoc.tracker.registry import (
    DanglingReferenceError,
    DocumentExistsError,
    InvalidRequestError,
    ReferenceCycleError,
    Registry,
    UnknownDocumentError,
    VersionOrderError,
)
from icdoc.versions import Version, VersionError


class DocumentIn(BaseModel):
    doc_id: str


class RefIn(BaseModel):
    doc_id: str
    version: str


class ArtifactIn(BaseModel):
    path: str
    sha256: str


class PublicationIn(BaseModel):
    version: str
    src: str = ""
    refs: list[RefIn] = Field(default_factory=list)
    build_location: str = ""
    artifacts: list[ArtifactIn] = Field(default_factory=list)


class BuildFailureIn(BaseModel):
    summary: str


class CheckFailureIn(BaseModel):
    path: str
    expected: str
    actual: str
    reporter: str


def _parse_version(text: str) -> Version:
    try:
        return Version.parse(text)
    except VersionError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def _reject(exc: Exception) -> HTTPException:
    if isinstance(exc, UnknownDocumentError):
        return HTTPException(status_code=404, detail=str(exc))
    if isinstance(exc, (DocumentExistsError, VersionOrderError)):
        return HTTPException(status_code=409, detail=str(exc))
    if isinstance(exc, (InvalidRequestError, DanglingReferenceError, ReferenceCycleError)):
        return HTTPException(status_code=422, detail=str(exc))
    raise exc


def create_app(registry: Registry) -> FastAPI:
    app = FastAPI(title="icdoc tracker", docs_url=None, redoc_url=None)

    @app.post("/documents", status_code=201)
    def register_document(body: DocumentIn) -> dict:
        try:
            record = registry.register_document(body.doc_id)
        except Exception as exc:  # noqa: BLE001 - translated to HTTP errors
            raise _reject(exc) from None
        return store.document_to_json(record)

    @app.post("/documents/{doc_id}/versions", status_code=201)
    def record_publication(doc_id: str, body: PublicationIn) -> dict:
        version = _parse_version(body.version)
        refs = [(r.doc_id, _parse_version(r.version)) for r in body.refs]
        try:
            changed = registry.record_publication(
                doc_id,
                version,
                src=body.src,
                refs=refs,
                build_location=body.build_location,
                artifacts=[(a.path, a.sha256) for a in body.artifacts],
            )
        except Exception as exc:  # noqa: BLE001
            raise _reject(exc) from None
        return {
            "changed": [
                {"doc_id": c.doc_id, "status": c.status.value, "status_reason": c.status_reason}
                for c in changed
            ]
        }

    @app.post("/documents/{doc_id}/build-failures", status_code=201)
    def record_build_failure(doc_id: str, body: BuildFailureIn) -> dict:
        try:
            record = registry.record_build_failure(doc_id, body.summary)
        except Exception as exc:  # noqa: BLE001
            raise _reject(exc) from None
        return store.document_to_json(record)

    @app.post("/documents/{doc_id}/check-failures", status_code=201)
    def report_check_failure(doc_id: str, body: CheckFailureIn) -> dict:
        try:
            event = registry.report_check_failure(
                doc_id, path=body.path, expected=body.expected,
                actual=body.actual, reporter=body.reporter,
            )
        except Exception as exc:  # noqa: BLE001
            raise _reject(exc) from None
        return store.event_to_json(event)

    @app.get("/documents")
    def list_documents() -> list[dict]:
        return [store.document_to_json(r) for r in registry.list_documents()]

    @app.get("/documents/{doc_id}")
    def get_document(doc_id: str) -> dict:
        try:
            record = registry.get(doc_id)
        except Exception as exc:  # noqa: BLE001
            raise _reject(exc) from None
        payload = store.document_to_json(record)
        payload["events"] = [store.event_to_json(e) for e in registry.events(doc_id)]
        return payload

    return app
