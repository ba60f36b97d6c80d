"""Line-oriented parser for ICDML.

Document shape: line 1 holds ``= <title>``, followed by ``:name: value``
attribute lines up to the first blank line, followed by body blocks.
Body blocks are headings (``==`` through ``=====``), blank-line separated
paragraphs, ``*``-prefixed list items, block macros alone on a line
(``glossary::[]``, ``doclog::[]``, ``references::[]``), and fenced
register-description blocks introduced by ``[rdl]``.

Structural lines (headings, list items, macros, fences) terminate a
paragraph even without a blank line in between.  Unknown macro names,
inline or block, are parse errors rather than passed through as text.
"""

from __future__ import annotations

import re

from icdoc.errors import ParseError
from icdoc.markup.ast import (
    Block,
    Document,
    Heading,
    IcdRef,
    InlineNode,
    Link,
    ListBlock,
    ListItem,
    MacroBlock,
    Paragraph,
    RdlBlock,
    TermRef,
    TextSpan,
)
from icdoc.versions import Version, VersionError

DOC_ID_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")

_TITLE_RE = re.compile(r"=\s+(.+?)\s*$")
_ATTR_RE = re.compile(r":([A-Za-z][A-Za-z0-9_-]*):\s*(.*?)\s*$")
_HEADING_RE = re.compile(r"(={2,})\s+(.+?)\s*$")
_LIST_ITEM_RE = re.compile(r"\*\s+(.*?)\s*$")
_BLOCK_MACRO_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)::\[(.*)\]\s*$")
_RDL_MARKER_RE = re.compile(r"\[rdl\]\s*$")
_FENCE_RE = re.compile(r"----\s*$")
_INLINE_MACRO_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*):([^\s\[\]]*)\[([^\]]*)\]")

BLOCK_MACROS = ("glossary", "doclog", "references")
INLINE_MACROS = ("link", "term", "icdref")


def _parse_inlines(text: str, base_line: int) -> tuple[InlineNode, ...]:
    nodes: list[InlineNode] = []
    pos = 0
    for match in _INLINE_MACRO_RE.finditer(text):
        name, target, label = match.group(1), match.group(2), match.group(3)
        line = base_line + text.count("\n", 0, match.start())
        if name not in INLINE_MACROS:
            if name in BLOCK_MACROS:
                raise ParseError(line, f"block macro '{name}' must appear alone on its own line")
            raise ParseError(line, f"unknown macro '{name}'")
        if match.start() > pos:
            nodes.append(TextSpan(span=(pos, match.start()), text=text[pos : match.start()]))
        span = (match.start(), match.end())
        if name == "link":
            if not target:
                raise ParseError(line, "link target must not be empty")
            nodes.append(Link(span=span, target=target, label=label))
        elif name == "term":
            if not target:
                raise ParseError(line, "term name must not be empty")
            if label:
                raise ParseError(line, "term macro takes no label")
            nodes.append(TermRef(span=span, term=target))
        else:
            if DOC_ID_RE.fullmatch(target) is None:
                raise ParseError(line, f"invalid document id {target!r} in icdref")
            try:
                version = Version.parse(label)
            except VersionError:
                raise ParseError(line, f"invalid version {label!r} in icdref") from None
            nodes.append(IcdRef(span=span, doc_id=target, version=version))
        pos = match.end()
    if pos < len(text):
        nodes.append(TextSpan(span=(pos, len(text)), text=text[pos:]))
    return tuple(nodes)


def _parse_header(lines: list[str]) -> tuple[str, dict[str, str]]:
    if not lines:
        raise ParseError(1, "document must start with '= <title>'")
    title_match = _TITLE_RE.fullmatch(lines[0])
    if title_match is None:
        raise ParseError(1, "document must start with '= <title>'")
    title = title_match.group(1)

    attributes: dict[str, str] = {}
    attr_lines: dict[str, int] = {}
    index = 1
    while index < len(lines) and lines[index].strip():
        lineno = index + 1
        attr_match = _ATTR_RE.fullmatch(lines[index])
        if attr_match is None:
            raise ParseError(lineno, "malformed attribute line, expected ':name: value'")
        name, value = attr_match.group(1), attr_match.group(2)
        if name in attributes:
            raise ParseError(lineno, f"duplicate attribute '{name}'")
        attributes[name] = value
        attr_lines[name] = lineno
        index += 1

    if "doc-id" not in attributes:
        raise ParseError(1, "missing required attribute 'doc-id'")
    if "version" not in attributes:
        raise ParseError(1, "missing required attribute 'version'")
    doc_id = attributes["doc-id"]
    if DOC_ID_RE.fullmatch(doc_id) is None:
        raise ParseError(attr_lines["doc-id"], f"invalid doc-id {doc_id!r}")
    try:
        Version.parse(attributes["version"])
    except VersionError:
        raise ParseError(
            attr_lines["version"], f"invalid version {attributes['version']!r}"
        ) from None
    return title, attributes


def parse_document(source: str) -> Document:
    """Parse ICDML source into a Document, or raise ParseError."""
    lines = source.split("\n")
    title, attributes = _parse_header(lines)

    blocks: list[Block] = []
    para_lines: list[str] = []
    para_start = 0
    items: list[ListItem] = []
    list_start = 0

    def flush_paragraph() -> None:
        nonlocal para_lines
        if para_lines:
            text = "\n".join(para_lines)
            blocks.append(
                Paragraph(text=text, inlines=_parse_inlines(text, para_start), line=para_start)
            )
            para_lines = []

    def flush_list() -> None:
        nonlocal items
        if items:
            blocks.append(ListBlock(items=tuple(items), line=list_start))
            items = []

    index = 1 + len(attributes)  # skip title and attribute lines
    # step over the blank separator, if the document has a body at all
    if index < len(lines):
        index += 1

    while index < len(lines):
        line = lines[index]
        lineno = index + 1

        if not line.strip():
            flush_paragraph()
            flush_list()
            index += 1
            continue

        heading_match = _HEADING_RE.fullmatch(line)
        if heading_match is not None:
            flush_paragraph()
            flush_list()
            level = len(heading_match.group(1))
            if level > 5:
                raise ParseError(lineno, f"heading level {level} exceeds the maximum of 5")
            text = heading_match.group(2)
            blocks.append(
                Heading(level=level, text=text, inlines=_parse_inlines(text, lineno), line=lineno)
            )
            index += 1
            continue
        if re.match(r"=(\s|$)", line):
            raise ParseError(lineno, "document title marker '=' is only valid on line 1")

        if _RDL_MARKER_RE.fullmatch(line):
            flush_paragraph()
            flush_list()
            fence_open = lineno + 1
            if index + 1 >= len(lines) or not _FENCE_RE.fullmatch(lines[index + 1]):
                raise ParseError(fence_open, "expected '----' fence after [rdl]")
            close = index + 2
            while close < len(lines) and not _FENCE_RE.fullmatch(lines[close]):
                close += 1
            if close >= len(lines):
                raise ParseError(fence_open, "unclosed rdl block fence")
            body = "\n".join(lines[index + 2 : close])
            blocks.append(
                RdlBlock(source=body, line=lineno, fence_open=fence_open, fence_close=close + 1)
            )
            index = close + 1
            continue

        macro_match = _BLOCK_MACRO_RE.fullmatch(line)
        if macro_match is not None:
            flush_paragraph()
            flush_list()
            name, args = macro_match.group(1), macro_match.group(2)
            if name not in BLOCK_MACROS:
                raise ParseError(lineno, f"unknown macro '{name}'")
            if args:
                raise ParseError(lineno, f"macro '{name}' takes no arguments")
            blocks.append(MacroBlock(name=name, line=lineno))
            index += 1
            continue

        item_match = _LIST_ITEM_RE.fullmatch(line)
        if item_match is not None:
            flush_paragraph()
            if not items:
                list_start = lineno
            text = item_match.group(1)
            items.append(ListItem(text=text, inlines=_parse_inlines(text, lineno), line=lineno))
            index += 1
            continue

        flush_list()
        if not para_lines:
            para_start = lineno
        para_lines.append(line)
        index += 1

    flush_paragraph()
    flush_list()
    return Document(title=title, attributes=attributes, blocks=tuple(blocks))
