"""Expansion of content-generating macros into ordinary blocks.

Expansion is a pure function from one Document to another: glossary
macros become definition lists over every referenced term, doclog macros
become newest-first history tables, references macros become list blocks
enumerating the distinct document references, and every inline reference
is annotated with its resolved canonical location (or left unresolved).
Running the expansion twice with the same inputs is a no-op the second
time, because no macro blocks survive the first pass.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Mapping

from icdoc.markup.ast import (
    Block,
    DefinitionEntry,
    DefinitionList,
    Document,
    Heading,
    IcdRef,
    InlineNode,
    ListBlock,
    ListItem,
    MacroBlock,
    Paragraph,
    Table,
    TermRef,
    TextSpan,
)
from icdoc.markup.glossary import Glossary
from icdoc.markup.history import HistoryEntry
from icdoc.versions import Version

# (doc_id, version) -> canonical location; absent or None means unresolved
RefTable = Mapping[tuple[str, Version], "str | None"]

DOCLOG_HEADER = ("Version", "Date", "Author", "Summary")
UNDEFINED_TERM_TEXT = "(not defined)"
UNRESOLVED_LOCATION_TEXT = "(unresolved)"


def _annotate_refs(nodes: tuple[InlineNode, ...], refs: RefTable) -> tuple[InlineNode, ...]:
    out: list[InlineNode] = []
    for node in nodes:
        if isinstance(node, IcdRef):
            out.append(replace(node, location=refs.get((node.doc_id, node.version))))
        else:
            out.append(node)
    return tuple(out)


def document_terms(doc: Document) -> set[str]:
    """Every glossary term referenced anywhere in the document."""
    terms: set[str] = set()
    for _text, _line, nodes in iter_inline_units(doc):
        terms.update(n.term for n in nodes if isinstance(n, TermRef))
    return terms


def document_refs(doc: Document) -> list[tuple[str, Version]]:
    """Distinct inline document references, sorted by id then version."""
    refs = {
        (n.doc_id, n.version)
        for _text, _line, nodes in iter_inline_units(doc)
        for n in nodes
        if isinstance(n, IcdRef)
    }
    return sorted(refs, key=lambda r: (r[0], r[1].sort_key))


def iter_inline_units(doc: Document):
    """Yield (text, line, inline nodes) for each authored prose unit in order."""
    for block in doc.blocks:
        if isinstance(block, (Paragraph, Heading)):
            yield block.text, block.line, block.inlines
        elif isinstance(block, ListBlock) and not block.generated:
            for item in block.items:
                yield item.text, item.line, item.inlines


def _glossary_block(doc: Document, glossary: Glossary, line: int) -> DefinitionList:
    entries = []
    for term in sorted(document_terms(doc)):
        definition = glossary.definition(term)
        entries.append(
            DefinitionEntry(
                term=term,
                definition=definition if definition is not None else UNDEFINED_TERM_TEXT,
                defined=definition is not None,
            )
        )
    return DefinitionList(entries=tuple(entries), line=line)


def _doclog_block(history: list[HistoryEntry], line: int) -> Table:
    rows = tuple(
        (str(e.version), e.date, e.author, e.summary) for e in reversed(history)
    )
    return Table(header=DOCLOG_HEADER, rows=rows, line=line)


def _references_block(doc: Document, refs: RefTable, line: int) -> ListBlock:
    items = []
    for doc_id, version in document_refs(doc):
        location = refs.get((doc_id, version))
        text = f"{doc_id} {version} — {location if location else UNRESOLVED_LOCATION_TEXT}"
        items.append(ListItem(text=text, inlines=(TextSpan(span=(0, len(text)), text=text),), line=line))
    return ListBlock(items=tuple(items), line=line, generated=True)


def expand_macros(
    doc: Document,
    glossary: Glossary,
    history: list[HistoryEntry],
    refs: RefTable,
) -> Document:
    annotated: list[Block] = []
    for block in doc.blocks:
        if isinstance(block, Paragraph):
            annotated.append(replace(block, inlines=_annotate_refs(block.inlines, refs)))
        elif isinstance(block, Heading):
            annotated.append(replace(block, inlines=_annotate_refs(block.inlines, refs)))
        elif isinstance(block, ListBlock):
            items = tuple(
                replace(item, inlines=_annotate_refs(item.inlines, refs)) for item in block.items
            )
            annotated.append(replace(block, items=items))
        else:
            annotated.append(block)

    resolved = Document(title=doc.title, attributes=dict(doc.attributes), blocks=tuple(annotated))

    expanded: list[Block] = []
    for block in resolved.blocks:
        if not isinstance(block, MacroBlock):
            expanded.append(block)
        elif block.name == "glossary":
            expanded.append(_glossary_block(resolved, glossary, block.line))
        elif block.name == "doclog":
            expanded.append(_doclog_block(history, block.line))
        else:
            expanded.append(_references_block(resolved, refs, block.line))

    return Document(title=doc.title, attributes=dict(doc.attributes), blocks=tuple(expanded))
