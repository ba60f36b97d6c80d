"""Data model for register maps and their validation findings.

Line numbers on model nodes are 1-based positions within the rdl source
the node was parsed from; programmatically built maps may leave them 0.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from enum import Enum


class Endianness(Enum):
    BIG = "big"
    LITTLE = "little"
    UNSPECIFIED = "unspecified"


REG_WIDTHS = (8, 16, 32, 64)
DEFAULT_REGWIDTH = 32
SW_ACCESS_VALUES = ("r", "w", "rw")
HW_ACCESS_VALUES = ("r", "w", "rw", "na")


@dataclass(frozen=True)
class Field:
    name: str
    msb: int
    lsb: int
    sw_access: str | None = None
    hw_access: str | None = None
    reset: int | None = None
    desc: str | None = None
    update_rate: str | None = None
    line: int = 0

    @property
    def width(self) -> int:
        return self.msb - self.lsb + 1


@dataclass(frozen=True)
class Register:
    name: str
    offset: int
    regwidth: int = DEFAULT_REGWIDTH
    display_name: str | None = None
    desc: str | None = None
    fields: tuple[Field, ...] = ()
    line: int = 0

    @property
    def byte_span(self) -> tuple[int, int]:
        """Half-open byte range [start, end) occupied by this register."""
        return (self.offset, self.offset + self.regwidth // 8)


@dataclass(frozen=True)
class RegisterMap:
    name: str
    endianness: Endianness = Endianness.UNSPECIFIED
    registers: tuple[Register, ...] = ()
    line: int = 0


@dataclass(frozen=True)
class RdlLocation:
    register: str | None
    field: str | None
    line: int


@dataclass(frozen=True)
class RdlViolation:
    rule_id: str
    location: RdlLocation
    message: str


RDL_RULES = tuple(f"RDL-C{i}" for i in range(1, 8))

_HEX_DIGEST_RE = re.compile(r"[0-9a-f]{64}")


@dataclass(frozen=True)
class Digest:
    """A SHA-256 digest in canonical lowercase hex form."""

    hex: str
    algorithm: str = "sha256"

    def __post_init__(self) -> None:
        if self.algorithm != "sha256":
            raise ValueError(f"unsupported digest algorithm {self.algorithm!r}")
        if _HEX_DIGEST_RE.fullmatch(self.hex) is None:
            raise ValueError(f"digest must be 64 lowercase hex characters, got {self.hex!r}")

    def __str__(self) -> str:
        return f"{self.algorithm}:{self.hex}"


def digest(data: bytes) -> Digest:
    return Digest(hex=hashlib.sha256(data).hexdigest())
