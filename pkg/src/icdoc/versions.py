"""Dotted document versions of the form ``major.minor`` or ``major.minor.patch``.

A version without a patch component keeps that absence for display
purposes but orders exactly like patch zero, so ``1.1`` and ``1.1.0``
compare equal while printing differently.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass

_VERSION_RE = re.compile(r"(\d+)\.(\d+)(?:\.(\d+))?")


class VersionError(ValueError):
    """Raised for strings or components that do not form a valid version."""


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class Version:
    major: int
    minor: int
    patch: int | None = None

    def __post_init__(self) -> None:
        components = (self.major, self.minor) + (() if self.patch is None else (self.patch,))
        if any(not isinstance(c, int) or c < 0 for c in components):
            raise VersionError(f"version components must be non-negative integers, got {components!r}")

    @classmethod
    def parse(cls, text: str) -> Version:
        match = _VERSION_RE.fullmatch(text.strip())
        if match is None:
            raise VersionError(f"invalid version {text!r}")
        patch = int(match.group(3)) if match.group(3) is not None else None
        return cls(int(match.group(1)), int(match.group(2)), patch)

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.major, self.minor, self.patch if self.patch is not None else 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Version):
            return NotImplemented
        return self.sort_key == other.sort_key

    def __hash__(self) -> int:
        return hash(self.sort_key)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Version):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.patch is None:
            return f"{self.major}.{self.minor}"
        return f"{self.major}.{self.minor}.{self.patch}"

    def __repr__(self) -> str:
        return f"Version({self})"
