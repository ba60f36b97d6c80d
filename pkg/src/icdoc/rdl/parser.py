"""Parser for the register-description subset embedded in documents.

Accepted shape: exactly one address map holding registers, each register
holding fields.

    addrmap <name> {
        littleendian = true;
        reg {
            desc = "...";
            regwidth = 32;
            field { sw = rw; reset = 0x0; desc = "..."; } f[7:4];
        } r1 @0x0;
    };

Properties are a closed set with per-element placement: ``bigendian``
and ``littleendian`` on the address map; ``name``, ``desc`` and
``regwidth`` on registers; ``sw``, ``hw``, ``reset``, ``desc`` and
``update_rate`` on fields.  Anything else is a syntax error.  The parser
enforces structural soundness (register widths, bit ranges with
``msb >= lsb``, unique names) and leaves semantic completeness checks
such as overlaps or missing properties to the validator, so that those
can surface as gate findings instead of hard failures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from icdoc.errors import ParseError
from icdoc.rdl.model import (
    Endianness,
    Field,
    HW_ACCESS_VALUES,
    REG_WIDTHS,
    Register,
    RegisterMap,
    SW_ACCESS_VALUES,
)

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>//[^\n]*)
    | (?P<hex>0[xX][0-9A-Fa-f]+)
    | (?P<int>\d+)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<string>"[^"\n]*")
    | (?P<punct>[{}\[\]@;:=])
    """,
    re.VERBOSE,
)

_ADDRMAP_PROPS = ("bigendian", "littleendian")
_REG_PROPS = ("name", "desc", "regwidth")
_FIELD_PROPS = ("sw", "hw", "reset", "desc", "update_rate")


@dataclass(frozen=True)
class _Token:
    kind: str  # hex | int | ident | string | punct | eof
    value: str
    line: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ParseError(line, f"unexpected character {source[pos]!r}")
        kind = match.lastgroup
        text = match.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind=kind, value=text, line=line))
        line += text.count("\n")
        pos = match.end()
    tokens.append(_Token(kind="eof", value="", line=line))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self._tokens = tokens
        self._pos = 0

    def _peek(self) -> _Token:
        return self._tokens[self._pos]

    def _next(self) -> _Token:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _expect(self, kind: str, value: str | None = None) -> _Token:
        token = self._next()
        want = value if value is not None else kind
        if token.kind != kind or (value is not None and token.value != value):
            got = token.value if token.kind != "eof" else "end of input"
            raise ParseError(token.line, f"expected {want!r}, got {got!r}")
        return token

    def _at_prop(self) -> bool:
        return (
            self._peek().kind == "ident"
            and self._tokens[self._pos + 1].kind == "punct"
            and self._tokens[self._pos + 1].value == "="
        )

    def _parse_prop(self, allowed: tuple[str, ...], element: str) -> tuple[str, _Token]:
        name_token = self._expect("ident")
        name = name_token.value
        if name not in allowed:
            raise ParseError(
                name_token.line, f"property '{name}' is not supported on {element}"
            )
        self._expect("punct", "=")
        value = self._next()
        if value.kind not in ("ident", "string", "int", "hex"):
            raise ParseError(value.line, f"invalid value for property '{name}'")
        self._expect("punct", ";")
        return name, value

    @staticmethod
    def _string_value(name: str, token: _Token) -> str:
        if token.kind != "string":
            raise ParseError(token.line, f"property '{name}' expects a quoted string")
        return token.value[1:-1]

    @staticmethod
    def _int_value(name: str, token: _Token) -> int:
        if token.kind == "int":
            return int(token.value)
        if token.kind == "hex":
            return int(token.value, 16)
        raise ParseError(token.line, f"property '{name}' expects an integer")

    @staticmethod
    def _bool_value(name: str, token: _Token) -> bool:
        if token.kind == "ident" and token.value in ("true", "false"):
            return token.value == "true"
        raise ParseError(token.line, f"property '{name}' expects true or false")

    def parse_map(self) -> RegisterMap:
        start = self._expect("ident", "addrmap")
        map_name = self._expect("ident").value
        self._expect("punct", "{")

        endianness = Endianness.UNSPECIFIED
        seen_props: set[str] = set()
        while self._at_prop():
            prop_line = self._peek().line
            name, value = self._parse_prop(_ADDRMAP_PROPS, "addrmap")
            if name in seen_props:
                raise ParseError(prop_line, f"duplicate property '{name}'")
            seen_props.add(name)
            if self._bool_value(name, value):
                wanted = Endianness.BIG if name == "bigendian" else Endianness.LITTLE
                if endianness is not Endianness.UNSPECIFIED and endianness is not wanted:
                    raise ParseError(prop_line, "conflicting endianness properties")
                endianness = wanted

        registers: list[Register] = []
        names: set[str] = set()
        while self._peek().kind == "ident" and self._peek().value == "reg":
            register = self._parse_register()
            if register.name in names:
                raise ParseError(register.line, f"duplicate register name '{register.name}'")
            names.add(register.name)
            registers.append(register)

        self._expect("punct", "}")
        self._expect("punct", ";")
        trailer = self._peek()
        if trailer.kind != "eof":
            if trailer.kind == "ident" and trailer.value == "addrmap":
                raise ParseError(trailer.line, "exactly one addrmap is allowed")
            raise ParseError(trailer.line, f"unexpected trailing input {trailer.value!r}")
        return RegisterMap(
            name=map_name,
            endianness=endianness,
            registers=tuple(registers),
            line=start.line,
        )

    def _parse_register(self) -> Register:
        start = self._expect("ident", "reg")
        self._expect("punct", "{")

        display_name: str | None = None
        desc: str | None = None
        regwidth: int | None = None
        fields: list[Field] = []
        field_names: set[str] = set()
        seen_props: set[str] = set()

        while True:
            token = self._peek()
            if token.kind == "ident" and token.value == "field":
                field = self._parse_field()
                if field.name in field_names:
                    raise ParseError(field.line, f"duplicate field name '{field.name}'")
                field_names.add(field.name)
                fields.append(field)
                continue
            if self._at_prop():
                prop_line = token.line
                name, value = self._parse_prop(_REG_PROPS, "reg")
                if name in seen_props:
                    raise ParseError(prop_line, f"duplicate property '{name}'")
                seen_props.add(name)
                if name == "name":
                    display_name = self._string_value(name, value)
                elif name == "desc":
                    desc = self._string_value(name, value)
                else:
                    width = self._int_value(name, value)
                    if width not in REG_WIDTHS:
                        raise ParseError(
                            value.line, f"regwidth must be one of {', '.join(map(str, REG_WIDTHS))}"
                        )
                    regwidth = width
                continue
            break

        self._expect("punct", "}")
        reg_name = self._expect("ident").value
        self._expect("punct", "@")
        offset_token = self._next()
        if offset_token.kind != "hex":
            raise ParseError(offset_token.line, "register offset expects a hex literal like 0x10")
        self._expect("punct", ";")
        return Register(
            name=reg_name,
            offset=int(offset_token.value, 16),
            regwidth=regwidth if regwidth is not None else 32,
            display_name=display_name,
            desc=desc,
            fields=tuple(fields),
            line=start.line,
        )

    def _parse_field(self) -> Field:
        start = self._expect("ident", "field")
        self._expect("punct", "{")

        sw_access: str | None = None
        hw_access: str | None = None
        reset: int | None = None
        desc: str | None = None
        update_rate: str | None = None
        seen_props: set[str] = set()

        while self._at_prop():
            prop_line = self._peek().line
            name, value = self._parse_prop(_FIELD_PROPS, "field")
            if name in seen_props:
                raise ParseError(prop_line, f"duplicate property '{name}'")
            seen_props.add(name)
            if name == "sw":
                if value.kind != "ident" or value.value not in SW_ACCESS_VALUES:
                    raise ParseError(
                        value.line, f"sw expects one of {', '.join(SW_ACCESS_VALUES)}"
                    )
                sw_access = value.value
            elif name == "hw":
                if value.kind != "ident" or value.value not in HW_ACCESS_VALUES:
                    raise ParseError(
                        value.line, f"hw expects one of {', '.join(HW_ACCESS_VALUES)}"
                    )
                hw_access = value.value
            elif name == "reset":
                reset = self._int_value(name, value)
            elif name == "desc":
                desc = self._string_value(name, value)
            else:
                update_rate = self._string_value(name, value)

        self._expect("punct", "}")
        field_name = self._expect("ident").value
        self._expect("punct", "[")
        msb_token = self._expect("int")
        self._expect("punct", ":")
        lsb_token = self._expect("int")
        self._expect("punct", "]")
        self._expect("punct", ";")
        msb, lsb = int(msb_token.value), int(lsb_token.value)
        if msb < lsb:
            raise ParseError(msb_token.line, "msb must be >= lsb")
        return Field(
            name=field_name,
            msb=msb,
            lsb=lsb,
            sw_access=sw_access,
            hw_access=hw_access,
            reset=reset,
            desc=desc,
            update_rate=update_rate,
            line=start.line,
        )


def parse_rdl(source: str) -> RegisterMap:
    """Parse register-description source into a RegisterMap, or raise ParseError."""
    return _Parser(_tokenize(source)).parse_map()
