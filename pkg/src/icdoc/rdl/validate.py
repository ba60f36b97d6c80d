"""Semantic validation of register maps against a closed rule catalogue.

Rules:

* RDL-C1: a field is missing one of the required properties.
* RDL-C2: two fields of one register claim overlapping bit positions.
* RDL-C3: a field reaches beyond the register width.
* RDL-C4: two registers claim overlapping byte ranges.
* RDL-C5: the address map does not state its endianness.
* RDL-C6: a register has no description.
* RDL-C7: a reset value does not fit the field width.

Findings come back ordered by source line.  Which field properties are
required (RDL-C1) is configurable; the default demands ``sw``, ``reset``
and ``desc``.
"""

from __future__ import annotations

from typing import Iterable

from icdoc.rdl.model import (
    Endianness,
    Field,
    RdlLocation,
    RdlViolation,
    Register,
    RegisterMap,
)

DEFAULT_REQUIRED_FIELD_PROPS = frozenset({"sw", "reset", "desc"})

# accepted spellings of a required-property name -> Field attribute
_FIELD_PROP_ATTRS = {
    "sw": "sw_access",
    "sw_access": "sw_access",
    "hw": "hw_access",
    "hw_access": "hw_access",
    "reset": "reset",
    "desc": "desc",
    "update_rate": "update_rate",
}

# canonical display name per attribute, for messages
_ATTR_DISPLAY = {
    "sw_access": "sw",
    "hw_access": "hw",
    "reset": "reset",
    "desc": "desc",
    "update_rate": "update_rate",
}

STRUCTURAL_RULES = frozenset({"RDL-C2", "RDL-C3", "RDL-C4", "RDL-C7"})


def normalize_required_props(names: Iterable[str]) -> frozenset[str]:
    """Map configured property names onto Field attributes, rejecting unknowns."""
    attrs = set()
    for name in names:
        attr = _FIELD_PROP_ATTRS.get(name)
        if attr is None:
            raise ValueError(f"unknown field property {name!r}")
        attrs.add(attr)
    return frozenset(attrs)


def _missing(value: object) -> bool:
    return value is None or value == ""


def _field_violations(
    register: Register, field: Field, required_attrs: frozenset[str]
) -> list[RdlViolation]:
    loc = RdlLocation(register=register.name, field=field.name, line=field.line)
    out = []
    for attr in sorted(required_attrs):
        if _missing(getattr(field, attr)):
            out.append(
                RdlViolation(
                    rule_id="RDL-C1",
                    location=loc,
                    message=f"field '{register.name}.{field.name}' is missing required property '{_ATTR_DISPLAY[attr]}'",
                )
            )
    if field.msb >= register.regwidth:
        out.append(
            RdlViolation(
                rule_id="RDL-C3",
                location=loc,
                message=(
                    f"field '{register.name}.{field.name}' bit {field.msb} exceeds "
                    f"register width {register.regwidth}"
                ),
            )
        )
    if field.reset is not None and field.reset >= (1 << field.width):
        out.append(
            RdlViolation(
                rule_id="RDL-C7",
                location=loc,
                message=(
                    f"reset value {field.reset:#x} does not fit field "
                    f"'{register.name}.{field.name}' of width {field.width}"
                ),
            )
        )
    return out


def _register_violations(register: Register, required_attrs: frozenset[str]) -> list[RdlViolation]:
    out = []
    if _missing(register.desc):
        out.append(
            RdlViolation(
                rule_id="RDL-C6",
                location=RdlLocation(register=register.name, field=None, line=register.line),
                message=f"register '{register.name}' has no description",
            )
        )
    for field in register.fields:
        out.extend(_field_violations(register, field, required_attrs))
    for i, first in enumerate(register.fields):
        for second in register.fields[i + 1 :]:
            if first.lsb <= second.msb and second.lsb <= first.msb:
                later = first if first.line >= second.line else second
                out.append(
                    RdlViolation(
                        rule_id="RDL-C2",
                        location=RdlLocation(
                            register=register.name, field=later.name, line=later.line
                        ),
                        message=(
                            f"fields '{register.name}.{first.name}' [{first.msb}:{first.lsb}] and "
                            f"'{register.name}.{second.name}' [{second.msb}:{second.lsb}] overlap"
                        ),
                    )
                )
    return out


def validate_rdl(
    rmap: RegisterMap,
    required_field_props: Iterable[str] = DEFAULT_REQUIRED_FIELD_PROPS,
) -> list[RdlViolation]:
    """Check a register map against the full rule catalogue."""
    required_attrs = normalize_required_props(required_field_props)
    violations: list[RdlViolation] = []

    if rmap.endianness is Endianness.UNSPECIFIED:
        violations.append(
            RdlViolation(
                rule_id="RDL-C5",
                location=RdlLocation(register=None, field=None, line=rmap.line),
                message=f"address map '{rmap.name}' does not specify endianness",
            )
        )

    for register in rmap.registers:
        violations.extend(_register_violations(register, required_attrs))

    for i, first in enumerate(rmap.registers):
        for second in rmap.registers[i + 1 :]:
            a_start, a_end = first.byte_span
            b_start, b_end = second.byte_span
            if a_start < b_end and b_start < a_end:
                later = first if first.line >= second.line else second
                violations.append(
                    RdlViolation(
                        rule_id="RDL-C4",
                        location=RdlLocation(register=later.name, field=None, line=later.line),
                        message=(
                            f"registers '{first.name}' [{a_start:#x}, {a_end:#x}) and "
                            f"'{second.name}' [{b_start:#x}, {b_end:#x}) overlap"
                        ),
                    )
                )

    violations.sort(key=lambda v: (v.location.line, v.rule_id, v.message))
    return violations


def structural_violations(rmap: RegisterMap) -> list[RdlViolation]:
    """The subset of findings that make generated artifacts ill-defined."""
    return [v for v in validate_rdl(rmap, required_field_props=()) if v.rule_id in STRUCTURAL_RULES]
