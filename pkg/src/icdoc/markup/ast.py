"""Node types for parsed ICDML documents.

Inline content is modeled as a flat sequence of nodes per paragraph,
heading, or list item.  Each node records the half-open character span
``[start, end)`` it occupies in the owning raw text, so the original
text can always be reconstructed and token positions mapped back to
source lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from icdoc.versions import Version


@dataclass(frozen=True)
class TextSpan:
    span: tuple[int, int]
    text: str


@dataclass(frozen=True)
class Link:
    span: tuple[int, int]
    target: str
    label: str


@dataclass(frozen=True)
class TermRef:
    span: tuple[int, int]
    term: str


@dataclass(frozen=True)
class IcdRef:
    """Reference to another tracked document pinned at an exact version."""

    span: tuple[int, int]
    doc_id: str
    version: Version
    location: str | None = None


InlineNode = TextSpan | Link | TermRef | IcdRef


def plain_text(inlines: tuple[InlineNode, ...]) -> str:
    """Text as a reader sees it, with markup replaced by its display form."""
    parts: list[str] = []
    for node in inlines:
        if isinstance(node, TextSpan):
            parts.append(node.text)
        elif isinstance(node, Link):
            parts.append(node.label or node.target)
        elif isinstance(node, TermRef):
            parts.append(node.term)
        else:
            parts.append(f"{node.doc_id} {node.version}")
    return "".join(parts)


@dataclass(frozen=True)
class Heading:
    level: int
    text: str
    inlines: tuple[InlineNode, ...]
    line: int


@dataclass(frozen=True)
class Paragraph:
    text: str
    inlines: tuple[InlineNode, ...]
    line: int


@dataclass(frozen=True)
class ListItem:
    text: str
    inlines: tuple[InlineNode, ...]
    line: int


@dataclass(frozen=True)
class ListBlock:
    items: tuple[ListItem, ...]
    line: int
    # True for lists produced by macro expansion; those are tool output,
    # not author prose, and stay out of the prose-quality scans
    generated: bool = False


@dataclass(frozen=True)
class MacroBlock:
    """A content-generating macro (``glossary``, ``doclog``, ``references``)
    still awaiting expansion."""

    name: str
    line: int


@dataclass(frozen=True)
class RdlBlock:
    """Verbatim register-description source fenced inside the document.

    ``line`` is the ``[rdl]`` marker line; content line *k* (1-based)
    sits at document line ``fence_open + k``.
    """

    source: str
    line: int
    fence_open: int
    fence_close: int


@dataclass(frozen=True)
class DefinitionEntry:
    term: str
    definition: str
    defined: bool


@dataclass(frozen=True)
class DefinitionList:
    entries: tuple[DefinitionEntry, ...]
    line: int


@dataclass(frozen=True)
class Table:
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    line: int


Block = Heading | Paragraph | ListBlock | MacroBlock | RdlBlock | DefinitionList | Table


@dataclass(frozen=True)
class Document:
    title: str
    attributes: dict[str, str] = field(compare=True, default_factory=dict)
    blocks: tuple[Block, ...] = ()

    @property
    def doc_id(self) -> str:
        return self.attributes["doc-id"]

    @property
    def version(self) -> Version:
        return Version.parse(self.attributes["version"])

    def rdl_blocks(self) -> tuple[RdlBlock, ...]:
        return tuple(b for b in self.blocks if isinstance(b, RdlBlock))


def node_line(unit_line: int, text: str, node: InlineNode) -> int:
    """Source line of an inline node inside a unit starting at ``unit_line``.

    Paragraph text joins its source lines with newlines, so the offset of
    the node start determines how many lines down it sits.
    """
    return unit_line + text.count("\n", 0, node.span[0])
