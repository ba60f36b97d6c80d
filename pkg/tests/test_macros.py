from __future__ import annotations

import pytest

from icdoc.markup.ast import DefinitionList, IcdRef, ListBlock, MacroBlock, Table
from icdoc.markup.glossary import CENTRAL, Glossary, GlossaryEntry
from icdoc.markup.history import HistoryEntry
from icdoc.markup.macros import (
    UNDEFINED_TERM_TEXT,
    UNRESOLVED_LOCATION_TEXT,
    document_refs,
    document_terms,
    expand_macros,
)
from icdoc.markup.parser import parse_document
from icdoc.versions import Version


def _doc(body: str):
    return parse_document(f"= T\n:doc-id: icd-a\n:version: 1.0\n\n{body}")


def _glossary(**terms: str) -> Glossary:
    entries = {
        name: GlossaryEntry(term=name, definition=text, origin=CENTRAL)
        for name, text in terms.items()
    }
    return Glossary(entries=entries)


def test_document_terms_are_distinct():
    doc = _doc("term:DMA[] then term:ADC[] then term:ADC[] again")
    assert document_terms(doc) == {"ADC", "DMA"}


def test_document_refs_are_sorted_and_distinct():
    doc = _doc("icdref:icd-b[2.0] and icdref:icd-a[1.1] and icdref:icd-b[2.0]")
    assert document_refs(doc) == [("icd-a", Version(1, 1)), ("icd-b", Version(2, 0))]


def test_glossary_block_lists_only_referenced_terms():
    doc = _doc("Uses term:ADC[].\n\nglossary::[]")
    expanded = expand_macros(doc, glossary=_glossary(ADC="converter", CRC="check"), history=(), refs={})
    dl = next(b for b in expanded.blocks if isinstance(b, DefinitionList))
    assert [e.term for e in dl.entries] == ["ADC"]
    assert dl.entries[0].definition == "converter"
    assert dl.entries[0].defined is True


def test_glossary_block_marks_undefined_terms():
    doc = _doc("Uses term:FOO[].\n\nglossary::[]")
    expanded = expand_macros(doc, glossary=_glossary(), history=(), refs={})
    dl = next(b for b in expanded.blocks if isinstance(b, DefinitionList))
    assert dl.entries[0].defined is False
    assert dl.entries[0].definition == UNDEFINED_TERM_TEXT


def test_doclog_block_renders_newest_first():
    history = (
        HistoryEntry(version=Version(1, 0), date="2024-01-02", author="R. Mercer", summary="start"),
        HistoryEntry(version=Version(1, 1), date="2024-03-04", author="J. Ode", summary="revise"),
    )
    doc = _doc("doclog::[]")
    expanded = expand_macros(doc, glossary=_glossary(), history=history, refs={})
    table = next(b for b in expanded.blocks if isinstance(b, Table))
    assert table.header == ("Version", "Date", "Author", "Summary")
    assert table.rows[0] == ("1.1", "2024-03-04", "J. Ode", "revise")
    assert table.rows[1] == ("1.0", "2024-01-02", "R. Mercer", "start")


def test_references_block_lists_resolved_and_unresolved_pins():
    doc = _doc("icdref:icd-b[2.0] and icdref:icd-c[1.0]\n\nreferences::[]")
    refs = {("icd-b", Version(2, 0)): "builds/icd-b/2.0"}
    expanded = expand_macros(doc, glossary=_glossary(), history=(), refs=refs)
    listing = next(
        b for b in expanded.blocks if isinstance(b, ListBlock) and b.generated
    )
    assert [i.text for i in listing.items] == [
        "icd-b 2.0 — builds/icd-b/2.0",
        f"icd-c 1.0 — {UNRESOLVED_LOCATION_TEXT}",
    ]


def test_expansion_annotates_inline_ref_locations():
    doc = _doc("icdref:icd-b[2.0]")
    refs = {("icd-b", Version(2, 0)): "builds/icd-b/2.0"}
    expanded = expand_macros(doc, glossary=_glossary(), history=(), refs=refs)
    ref = next(
        n for n in expanded.blocks[0].inlines if isinstance(n, IcdRef)
    )
    assert ref.location == "builds/icd-b/2.0"


def test_expansion_leaves_no_macro_blocks_behind():
    doc = _doc("glossary::[]\n\ndoclog::[]\n\nreferences::[]")
    expanded = expand_macros(doc, glossary=_glossary(), history=(), refs={})
    assert not any(isinstance(b, MacroBlock) for b in expanded.blocks)


def test_expansion_does_not_mutate_the_input_document():
    doc = _doc("term:ADC[]\n\nglossary::[]")
    before = doc.blocks
    expand_macros(doc, glossary=_glossary(ADC="converter"), history=(), refs={})
    assert doc.blocks is before
    assert any(isinstance(b, MacroBlock) for b in doc.blocks)


def test_expansion_is_deterministic():
    doc = _doc("term:B[] term:A[]\n\nglossary::[]\n\nicdref:icd-b[1.0]\n\nreferences::[]")
    glossary = _glossary(A="first", B="second")
    one = expand_macros(doc, glossary=glossary, history=(), refs={})
    two = expand_macros(doc, glossary=glossary, history=(), refs={})
    assert one == two


def test_generated_reference_list_is_marked_generated():
    doc = _doc("icdref:icd-b[1.0]\n\nreferences::[]")
    expanded = expand_macros(doc, glossary=_glossary(), history=(), refs={})
    listing = next(b for b in expanded.blocks if isinstance(b, ListBlock))
    assert listing.generated is True
    with pytest.raises(AttributeError):
        listing.generated = False
