from __future__ import annotations

import pytest

from icdoc.errors import ParseError
from icdoc.rdl.model import Endianness
from icdoc.rdl.parser import parse_rdl

_FULL = """\
addrmap conv {
    littleendian = true;
    reg {
        name = "Control";
        desc = "Control register";
        regwidth = 16;
        field {
            sw = rw;
            hw = r;
            reset = 0x3;
            desc = "Gain selection";
            update_rate = "on write";
        } gain[5:4];
    } ctrl @0x10;
};"""


def test_full_example_round_trips_all_properties():
    rmap = parse_rdl(_FULL)
    assert rmap.name == "conv"
    assert rmap.endianness is Endianness.LITTLE
    assert len(rmap.registers) == 1
    reg = rmap.registers[0]
    assert reg.name == "ctrl"
    assert reg.display_name == "Control"
    assert reg.desc == "Control register"
    assert reg.regwidth == 16
    assert reg.offset == 0x10
    field = reg.fields[0]
    assert (field.name, field.msb, field.lsb) == ("gain", 5, 4)
    assert field.sw_access == "rw"
    assert field.hw_access == "r"
    assert field.reset == 0x3
    assert field.desc == "Gain selection"
    assert field.update_rate == "on write"
    assert field.width == 2


def test_defaults_regwidth_32_and_unspecified_endianness():
    rmap = parse_rdl("addrmap m {\n  reg {\n  } r @0x0;\n};")
    assert rmap.endianness is Endianness.UNSPECIFIED
    assert rmap.registers[0].regwidth == 32


def test_bigendian_true_sets_big():
    rmap = parse_rdl("addrmap m { bigendian = true; };")
    assert rmap.endianness is Endianness.BIG


def test_endian_false_leaves_unspecified():
    rmap = parse_rdl("addrmap m { littleendian = false; };")
    assert rmap.endianness is Endianness.UNSPECIFIED


def test_conflicting_endianness_rejected():
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap m {\n  bigendian = true;\n  littleendian = true;\n};")
    assert "endianness" in err.value.message
    assert err.value.line == 3


def test_comments_are_ignored():
    rmap = parse_rdl("// header\naddrmap m { // trailing\n};")
    assert rmap.name == "m"
    assert rmap.line == 2


def test_two_addrmaps_rejected():
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap a {};\naddrmap b {};")
    assert "exactly one addrmap" in err.value.message
    assert err.value.line == 2


def test_msb_lower_than_lsb_rejected():
    source = "addrmap m {\n  reg {\n    field { } f[3:5];\n  } r @0x0;\n};"
    with pytest.raises(ParseError) as err:
        parse_rdl(source)
    assert err.value.message == "msb must be >= lsb"
    assert err.value.line == 3


def test_single_bit_field_is_allowed():
    rmap = parse_rdl("addrmap m {\n  reg {\n    field { } f[4:4];\n  } r @0x0;\n};")
    assert rmap.registers[0].fields[0].width == 1


def test_bad_regwidth_rejected():
    source = "addrmap m {\n  reg {\n    regwidth = 24;\n  } r @0x0;\n};"
    with pytest.raises(ParseError) as err:
        parse_rdl(source)
    assert err.value.message == "regwidth must be one of 8, 16, 32, 64"


def test_offset_must_be_hex_literal():
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap m {\n  reg {\n  } r @16;\n};")
    assert "hex" in err.value.message


def test_unknown_property_rejected():
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap m {\n  reg {\n    swizzle = 1;\n  } r @0x0;\n};")
    assert err.value.message == "property 'swizzle' is not supported on reg"


def test_misplaced_property_rejected_per_element():
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap m {\n  regwidth = 32;\n};")
    assert err.value.message == "property 'regwidth' is not supported on addrmap"
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap m {\n  reg {\n    sw = rw;\n  } r @0x0;\n};")
    assert err.value.message == "property 'sw' is not supported on reg"


def test_duplicate_property_rejected():
    source = 'addrmap m {\n  reg {\n    desc = "a";\n    desc = "b";\n  } r @0x0;\n};'
    with pytest.raises(ParseError) as err:
        parse_rdl(source)
    assert "duplicate property 'desc'" in err.value.message
    assert err.value.line == 4


def test_duplicate_register_name_rejected():
    source = "addrmap m {\n  reg {\n  } r @0x0;\n  reg {\n  } r @0x4;\n};"
    with pytest.raises(ParseError) as err:
        parse_rdl(source)
    assert "duplicate register name 'r'" in err.value.message


def test_duplicate_field_name_rejected():
    source = "addrmap m {\n  reg {\n    field { } f[0:0];\n    field { } f[1:1];\n  } r @0x0;\n};"
    with pytest.raises(ParseError) as err:
        parse_rdl(source)
    assert "duplicate field name 'f'" in err.value.message


def test_bad_sw_access_value_rejected():
    source = "addrmap m {\n  reg {\n    field { sw = x; } f[0:0];\n  } r @0x0;\n};"
    with pytest.raises(ParseError) as err:
        parse_rdl(source)
    assert "sw expects one of" in err.value.message


def test_hw_accepts_na():
    rmap = parse_rdl("addrmap m {\n  reg {\n    field { hw = na; } f[0:0];\n  } r @0x0;\n};")
    assert rmap.registers[0].fields[0].hw_access == "na"


def test_overlapping_fields_parse_without_error():
    source = (
        "addrmap m {\n  reg {\n    field { } a[3:0];\n    field { } b[2:2];\n  } r @0x0;\n};"
    )
    rmap = parse_rdl(source)
    assert len(rmap.registers[0].fields) == 2


def test_field_beyond_regwidth_parses_without_error():
    source = "addrmap m {\n  reg {\n    regwidth = 8;\n    field { } f[9:8];\n  } r @0x0;\n};"
    rmap = parse_rdl(source)
    assert rmap.registers[0].fields[0].msb == 9


def test_unexpected_character_reports_line():
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap m {\n  $bad\n};")
    assert err.value.line == 2
    assert "unexpected character" in err.value.message


def test_truncated_input_reports_end_of_input():
    with pytest.raises(ParseError) as err:
        parse_rdl("addrmap m {")
    assert "end of input" in err.value.message


def test_register_byte_span_uses_regwidth():
    rmap = parse_rdl(
        "addrmap m {\n  reg {\n    regwidth = 64;\n  } r @0x8;\n};"
    )
    assert rmap.registers[0].byte_span == (0x8, 0x10)
