"""C preprocessor headers generated from register maps.

Each header carries, per register, an address macro plus mask, shift and
reset macros per field, and embeds its own SHA-256 checksum in the lead
comment.  The checksum covers the header bytes with the checksum line
replaced by a fixed placeholder, so any consumer can verify a header by
redoing that substitution and hashing.  Output uses LF line endings and
UTF-8 and contains nothing environment-dependent.
"""

from __future__ import annotations

import re

from icdoc.rdl.bits import field_mask
from icdoc.rdl.model import Digest, Endianness, RegisterMap, digest
from icdoc.rdl.validate import structural_violations
from icdoc.versions import Version

CHECKSUM_PLACEHOLDER = "icdoc-checksum: PENDING"
_CHECKSUM_LINE_RE = re.compile(r"^icdoc-checksum: sha256:([0-9a-f]{64})$", re.MULTILINE)
_SYMBOL_RE = re.compile(r"[^A-Za-z0-9]")

_ENDIAN_NOTE = {
    Endianness.BIG: "big-endian",
    Endianness.LITTLE: "little-endian",
    Endianness.UNSPECIFIED: "endianness unspecified",
}


class InvalidRegisterMapError(ValueError):
    """Raised when a map's findings make its header artifact ill-defined."""

    def __init__(self, violations) -> None:
        summary = "; ".join(v.message for v in violations)
        super().__init__(f"register map has blocking findings: {summary}")
        self.violations = list(violations)


def symbol(text: str) -> str:
    """Uppercase C identifier fragment derived from an arbitrary name."""
    return _SYMBOL_RE.sub("_", text).upper()


def generate_header(
    rmap: RegisterMap, doc_id: str, version: Version, *, strict: bool = False
) -> bytes:
    """Render the header artifact for one address map.

    With ``strict`` set (publication builds), maps whose findings make
    the artifact ill-defined (overlaps, out-of-range bits or resets) are
    rejected.  Draft builds may generate headers from such maps anyway.
    """
    if strict:
        blocking = structural_violations(rmap)
        if blocking:
            raise InvalidRegisterMapError(blocking)

    guard = symbol(f"{doc_id}_{rmap.name}") + "_H"
    map_symbol = symbol(rmap.name)

    lines: list[str] = []
    lines.append("/*")
    lines.append(f" * Register interface for document '{doc_id}' version {version}.")
    lines.append(f" * Address map '{rmap.name}' ({_ENDIAN_NOTE[rmap.endianness]}).")
    lines.append(" *")
    lines.append(CHECKSUM_PLACEHOLDER)
    lines.append(" */")
    lines.append(f"#ifndef {guard}")
    lines.append(f"#define {guard}")
    for register in rmap.registers:
        reg_symbol = f"{map_symbol}_{symbol(register.name)}"
        lines.append("")
        lines.append(f"/* {register.name} at {register.offset:#x} */")
        lines.append(f"#define {reg_symbol}_ADDR 0x{register.offset:X}")
        for field in register.fields:
            field_symbol = f"{reg_symbol}_{symbol(field.name)}"
            lines.append(f"#define {field_symbol}_MASK 0x{field_mask(field):X}")
            lines.append(f"#define {field_symbol}_SHIFT {field.lsb}")
            if field.reset is not None:
                lines.append(f"#define {field_symbol}_RESET 0x{field.reset:X}")
    lines.append("")
    lines.append(f"#endif /* {guard} */")

    pending = ("\n".join(lines) + "\n").encode("utf-8")
    checksum = digest(pending)
    return pending.replace(
        CHECKSUM_PLACEHOLDER.encode("utf-8"),
        f"icdoc-checksum: sha256:{checksum.hex}".encode("utf-8"),
        1,
    )


def embedded_checksum(data: bytes) -> Digest | None:
    """The checksum a header claims for itself, if it carries one."""
    match = _CHECKSUM_LINE_RE.search(data.decode("utf-8", errors="replace"))
    if match is None:
        return None
    return Digest(hex=match.group(1))


def verify_embedded_checksum(data: bytes) -> bool:
    """True when a header's embedded checksum matches its own bytes."""
    claimed = embedded_checksum(data)
    if claimed is None:
        return False
    text = data.decode("utf-8", errors="replace")
    restored = _CHECKSUM_LINE_RE.sub(CHECKSUM_PLACEHOLDER, text, count=1)
    return digest(restored.encode("utf-8")) == claimed
