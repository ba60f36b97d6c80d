"""Human-readable register tables rendered as HTML fragments.

One fragment covers one address map: a heading line naming the map and
its endianness, then one table per register in source order.  Rows run
from the most significant bit down, and every contiguous bit range no
field claims appears as its own reserved row, so a reader can account
for all bits of the register.  Output is deterministic for a given map.
"""

from __future__ import annotations

import html as _html

from icdoc.rdl.model import Endianness, Register, RegisterMap

_ENDIAN_DISPLAY = {
    Endianness.BIG: "big-endian",
    Endianness.LITTLE: "little-endian",
    Endianness.UNSPECIFIED: "endianness unspecified",
}

_COLUMNS = ("Bits", "Name", "SW", "HW", "Reset", "Description")


def _reserved_ranges(register: Register) -> list[tuple[int, int]]:
    """Contiguous (msb, lsb) runs of bits no field claims, within the width."""
    claimed = set()
    for field in register.fields:
        claimed.update(range(field.lsb, field.msb + 1))
    ranges = []
    bit = 0
    while bit < register.regwidth:
        if bit in claimed:
            bit += 1
            continue
        low = bit
        while bit < register.regwidth and bit not in claimed:
            bit += 1
        ranges.append((bit - 1, low))
    return ranges


def _field_rows(register: Register) -> list[tuple[str, str, str, str, str, str]]:
    rows = []
    for field in register.fields:
        rows.append(
            (
                field.msb,
                (
                    f"{field.msb}:{field.lsb}",
                    field.name,
                    field.sw_access or "",
                    field.hw_access or "",
                    f"{field.reset:#x}" if field.reset is not None else "",
                    field.desc or "",
                ),
            )
        )
    for msb, lsb in _reserved_ranges(register):
        rows.append((msb, (f"{msb}:{lsb}", "(reserved)", "", "", "", "")))
    rows.sort(key=lambda pair: pair[0], reverse=True)
    return [row for _msb, row in rows]


def render_tables(rmap: RegisterMap) -> str:
    out: list[str] = []
    out.append('<div class="register-map">')
    out.append(
        f'<p class="register-map-title">Address map <code>{_html.escape(rmap.name)}</code> '
        f"({_ENDIAN_DISPLAY[rmap.endianness]})</p>"
    )
    for register in rmap.registers:
        out.append('<div class="register">')
        shown = register.display_name or register.name
        summary = f"<code>{_html.escape(shown)}</code> at {register.offset:#x}, {register.regwidth} bits"
        out.append(f'<p class="register-summary">{summary}</p>')
        if register.desc:
            out.append(f'<p class="register-desc">{_html.escape(register.desc)}</p>')
        out.append('<table class="register-fields">')
        out.append(
            "<thead><tr>" + "".join(f"<th>{c}</th>" for c in _COLUMNS) + "</tr></thead>"
        )
        out.append("<tbody>")
        for row in _field_rows(register):
            out.append("<tr>" + "".join(f"<td>{_html.escape(cell)}</td>" for cell in row) + "</tr>")
        out.append("</tbody>")
        out.append("</table>")
        out.append("</div>")
    out.append("</div>")
    return "\n".join(out)
