"""Bit-level packing and extraction for register fields."""

from __future__ import annotations

from icdoc.rdl.model import Field


def field_mask(field: Field) -> int:
    """Mask with exactly the field's bit positions set."""
    return ((1 << field.width) - 1) << field.lsb


def pack_field(reg_value: int, field: Field, value: int) -> int:
    """Return ``reg_value`` with the field replaced by ``value``.

    Bits outside the field are untouched.  Values that do not fit the
    field width are rejected rather than truncated.
    """
    if reg_value < 0:
        raise ValueError(f"register value must be non-negative, got {reg_value}")
    if value < 0 or value >= (1 << field.width):
        raise ValueError(
            f"value {value:#x} does not fit field '{field.name}' of width {field.width}"
        )
    return (reg_value & ~field_mask(field)) | (value << field.lsb)


def extract_field(reg_value: int, field: Field) -> int:
    """Read the field's value out of ``reg_value``."""
    if reg_value < 0:
        raise ValueError(f"register value must be non-negative, got {reg_value}")
    return (reg_value >> field.lsb) & ((1 << field.width) - 1)
