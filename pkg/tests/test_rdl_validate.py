from __future__ import annotations

import random

import pytest

from icdoc.rdl.model import Endianness, Field, Register, RegisterMap
from icdoc.rdl.parser import parse_rdl
from icdoc.rdl.validate import (
    DEFAULT_REQUIRED_FIELD_PROPS,
    normalize_required_props,
    structural_violations,
    validate_rdl,
)
from oracles import overlapping_field_pairs, overlapping_register_pairs

_CLEAN = """\
addrmap conv {
    littleendian = true;
    reg {
        desc = "Control";
        field { sw = rw; reset = 0x0; desc = "Enable"; } enable[0:0];
    } ctrl @0x0;
};"""


def _field(name: str, msb: int, lsb: int, line: int = 0, **kw) -> Field:
    kw.setdefault("sw_access", "rw")
    kw.setdefault("reset", 0)
    kw.setdefault("desc", "d")
    return Field(name=name, msb=msb, lsb=lsb, line=line, **kw)


def _map(*registers: Register, endianness=Endianness.LITTLE) -> RegisterMap:
    return RegisterMap(name="m", endianness=endianness, registers=registers)


def test_clean_map_yields_no_findings():
    assert validate_rdl(parse_rdl(_CLEAN)) == []


def test_missing_required_props_each_reported():
    field = Field(name="f", msb=0, lsb=0, line=3)
    rmap = _map(Register(name="r", offset=0, desc="d", fields=(field,), line=2))
    found = validate_rdl(rmap)
    assert [v.rule_id for v in found] == ["RDL-C1", "RDL-C1", "RDL-C1"]
    assert [v.message.split("'")[-2] for v in found] == ["desc", "reset", "sw"]
    assert all(v.location == found[0].location for v in found)
    assert found[0].location.line == 3


def test_required_props_are_configurable():
    field = Field(name="f", msb=0, lsb=0, sw_access="rw", reset=0, desc=None, line=1)
    rmap = _map(Register(name="r", offset=0, desc="d", fields=(field,)))
    assert validate_rdl(rmap, required_field_props=("sw", "reset")) == []
    found = validate_rdl(rmap, required_field_props=("desc",))
    assert [v.rule_id for v in found] == ["RDL-C1"]


def test_unknown_required_prop_name_rejected():
    with pytest.raises(ValueError):
        normalize_required_props(("volatile",))
    assert normalize_required_props(("sw_access", "sw")) == frozenset({"sw_access"})


def test_field_overlap_reported_once_per_pair_at_later_line():
    a = _field("a", 3, 0, line=3)
    b = _field("b", 2, 2, line=4)
    rmap = _map(Register(name="r", offset=0, desc="d", fields=(a, b), line=2))
    found = [v for v in validate_rdl(rmap) if v.rule_id == "RDL-C2"]
    assert len(found) == 1
    assert found[0].location.line == 4
    assert found[0].location.field == "b"
    assert "'r.a' [3:0]" in found[0].message
    assert "'r.b' [2:2]" in found[0].message


def test_adjacent_fields_do_not_overlap():
    a = _field("a", 3, 0)
    b = _field("b", 7, 4)
    rmap = _map(Register(name="r", offset=0, desc="d", fields=(a, b)))
    assert [v for v in validate_rdl(rmap) if v.rule_id == "RDL-C2"] == []


def test_field_exceeding_regwidth_reported():
    field = _field("f", 8, 8)
    rmap = _map(Register(name="r", offset=0, desc="d", regwidth=8, fields=(field,)))
    found = [v for v in validate_rdl(rmap) if v.rule_id == "RDL-C3"]
    assert len(found) == 1
    assert "bit 8 exceeds register width 8" in found[0].message


def test_topmost_bit_of_the_register_is_fine():
    field = _field("f", 7, 7)
    rmap = _map(Register(name="r", offset=0, desc="d", regwidth=8, fields=(field,)))
    assert [v for v in validate_rdl(rmap) if v.rule_id == "RDL-C3"] == []


def test_register_overlap_reported_per_pair():
    r1 = Register(name="a", offset=0x0, regwidth=32, desc="d", line=2)
    r2 = Register(name="b", offset=0x2, regwidth=32, desc="d", line=5)
    rmap = _map(r1, r2)
    found = [v for v in validate_rdl(rmap) if v.rule_id == "RDL-C4"]
    assert len(found) == 1
    assert found[0].location.register == "b"
    assert found[0].location.line == 5
    assert "[0x0, 0x4)" in found[0].message
    assert "[0x2, 0x6)" in found[0].message


def test_abutting_registers_do_not_overlap():
    r1 = Register(name="a", offset=0x0, regwidth=32, desc="d")
    r2 = Register(name="b", offset=0x4, regwidth=32, desc="d")
    assert [v for v in validate_rdl(_map(r1, r2)) if v.rule_id == "RDL-C4"] == []


def test_unspecified_endianness_reported_at_map_line():
    rmap = RegisterMap(name="m", endianness=Endianness.UNSPECIFIED, registers=(), line=1)
    found = validate_rdl(rmap)
    assert [v.rule_id for v in found] == ["RDL-C5"]
    assert found[0].location == type(found[0].location)(register=None, field=None, line=1)


def test_missing_register_desc_reported():
    rmap = _map(Register(name="r", offset=0, desc=None, line=4))
    found = validate_rdl(rmap)
    assert [v.rule_id for v in found] == ["RDL-C6"]
    assert found[0].location.line == 4


def test_empty_register_desc_counts_as_missing():
    rmap = _map(Register(name="r", offset=0, desc="", line=4))
    assert [v.rule_id for v in validate_rdl(rmap)] == ["RDL-C6"]


def test_oversized_reset_reported():
    field = _field("f", 1, 0, reset=0x4)
    rmap = _map(Register(name="r", offset=0, desc="d", fields=(field,)))
    found = [v for v in validate_rdl(rmap) if v.rule_id == "RDL-C7"]
    assert len(found) == 1
    assert "0x4" in found[0].message
    assert "width 2" in found[0].message


def test_maximum_reset_for_width_is_fine():
    field = _field("f", 1, 0, reset=0x3)
    rmap = _map(Register(name="r", offset=0, desc="d", fields=(field,)))
    assert [v for v in validate_rdl(rmap) if v.rule_id == "RDL-C7"] == []


def test_findings_sorted_by_line_then_rule():
    bad_field = Field(name="f", msb=40, lsb=0, reset=None, line=3)
    reg = Register(name="r", offset=0, desc=None, fields=(bad_field,), line=3)
    rmap = RegisterMap(name="m", endianness=Endianness.UNSPECIFIED, registers=(reg,), line=1)
    found = validate_rdl(rmap)
    lines = [v.location.line for v in found]
    assert lines == sorted(lines)
    same_line = [v.rule_id for v in found if v.location.line == 3]
    assert same_line == sorted(same_line)


def test_structural_subset_excludes_completeness_rules():
    bare = Field(name="f", msb=40, lsb=0, reset=None, line=3)
    reg = Register(name="r", offset=0, desc=None, fields=(bare,), line=3)
    rmap = RegisterMap(name="m", endianness=Endianness.UNSPECIFIED, registers=(reg,), line=1)
    rules = {v.rule_id for v in structural_violations(rmap)}
    assert rules == {"RDL-C3"}


def test_default_required_props():
    assert DEFAULT_REQUIRED_FIELD_PROPS == frozenset({"sw", "reset", "desc"})


def test_random_maps_match_pairwise_overlap_oracles():
    rng = random.Random(20240818)
    for _ in range(200):
        field_count = rng.randint(0, 6)
        fields = []
        for i in range(field_count):
            lsb = rng.randint(0, 30)
            msb = min(31, lsb + rng.randint(0, 6))
            fields.append(_field(f"f{i}", msb, lsb, line=i + 1))
        reg_count = rng.randint(1, 5)
        registers = [
            Register(
                name=f"r{i}",
                offset=rng.randrange(0, 64, 2),
                regwidth=rng.choice((8, 16, 32, 64)),
                desc="d",
                fields=tuple(fields) if i == 0 else (),
                line=i + 1,
            )
            for i in range(reg_count)
        ]
        rmap = _map(*registers)
        found = validate_rdl(rmap)

        got_field_pairs = set()
        for violation in found:
            if violation.rule_id == "RDL-C2":
                parts = violation.message.split("'")
                got_field_pairs.add(
                    frozenset((parts[1].split(".")[1], parts[3].split(".")[1]))
                )
        expected_field_pairs = overlapping_field_pairs(
            [(f.name, f.msb, f.lsb) for f in fields]
        )
        assert got_field_pairs == expected_field_pairs

        got_register_pairs = set()
        for violation in found:
            if violation.rule_id == "RDL-C4":
                parts = violation.message.split("'")
                got_register_pairs.add(frozenset((parts[1], parts[3])))
        expected_register_pairs = overlapping_register_pairs(
            [(r.name, r.offset, r.regwidth) for r in registers]
        )
        assert got_register_pairs == expected_register_pairs
