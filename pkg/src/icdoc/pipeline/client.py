"""HTTP client the pipeline uses to talk to a tracker service."""

from __future__ import annotations

import httpx

from icdoc.versions import Version


class TrackerUnreachableError(Exception):
    """The tracker endpoint could not be reached or did not answer."""


class TrackerRejectedError(Exception):
    """The tracker answered with a rejection."""

    def __init__(self, status_code: int, detail: str) -> None:
        super().__init__(f"tracker rejected the request ({status_code}): {detail}")
        self.status_code = status_code
        self.detail = detail


def _detail(response: httpx.Response) -> str:
    try:
        return str(response.json().get("detail", response.text))
    except ValueError:
        return response.text


class TrackerClient:
    """Thin wrapper over the tracker's HTTP interface.

    A custom ``httpx.Client`` may be injected; by default one is created
    against the given endpoint.
    """

    def __init__(self, endpoint: str, client: httpx.Client | None = None) -> None:
        self.endpoint = endpoint.rstrip("/")
        self._client = client if client is not None else httpx.Client(
            base_url=self.endpoint, timeout=10.0
        )

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> TrackerClient:
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _post(self, path: str, payload: dict, accept_conflict: bool = False) -> httpx.Response:
        try:
            response = self._client.post(path, json=payload)
        except httpx.HTTPError as exc:
            raise TrackerUnreachableError(f"cannot reach tracker at {self.endpoint}: {exc}") from None
        if response.status_code in (200, 201):
            return response
        if accept_conflict and response.status_code == 409:
            return response
        raise TrackerRejectedError(response.status_code, _detail(response))

    def ensure_registered(self, doc_id: str) -> None:
        """Register the document, tolerating one that already exists."""
        self._post("/documents", {"doc_id": doc_id}, accept_conflict=True)

    def publish_version(
        self,
        doc_id: str,
        version: Version,
        src: str,
        refs: list[tuple[str, Version]],
        build_location: str,
        artifacts: list[tuple[str, str]],
    ) -> list[dict]:
        """Record a publication; returns the status changes it caused."""
        response = self._post(
            f"/documents/{doc_id}/versions",
            {
                "version": str(version),
                "src": src,
                "refs": [{"doc_id": d, "version": str(v)} for d, v in refs],
                "build_location": build_location,
                "artifacts": [{"path": p, "sha256": s} for p, s in artifacts],
            },
        )
        return response.json().get("changed", [])

    def report_check_failure(
        self, doc_id: str, path: str, expected: str, actual: str, reporter: str
    ) -> None:
        self._post(
            f"/documents/{doc_id}/check-failures",
            {"path": path, "expected": expected, "actual": actual, "reporter": reporter},
        )

    def get_document(self, doc_id: str) -> dict | None:
        """Fetch one record with its events, or None for unknown documents."""
        try:
            response = self._client.get(f"/documents/{doc_id}")
        except httpx.HTTPError as exc:
            raise TrackerUnreachableError(f"cannot reach tracker at {self.endpoint}: {exc}") from None
        if response.status_code == 404:
            return None
        if response.status_code != 200:
            raise TrackerRejectedError(response.status_code, _detail(response))
        return response.json()
