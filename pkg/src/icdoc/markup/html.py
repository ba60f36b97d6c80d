"""Deterministic HTML rendering of fully expanded documents.

The renderer produces a single self-contained page with no timestamps
and no environment-dependent content, so that two renderings of the same
document are byte-identical.  Register-description blocks are rendered
from pre-built table fragments supplied by the caller, in block order.
"""

from __future__ import annotations

import html as _html
import re
from typing import Sequence

from icdoc.markup.ast import (
    DefinitionList,
    Document,
    Heading,
    IcdRef,
    InlineNode,
    Link,
    ListBlock,
    MacroBlock,
    Paragraph,
    RdlBlock,
    Table,
    TermRef,
    TextSpan,
)

_ANCHOR_SAFE_RE = re.compile(r"[^A-Za-z0-9_-]")

_STYLE = """\
body { font-family: sans-serif; max-width: 60em; margin: 2em auto; padding: 0 1em; }
table { border-collapse: collapse; margin: 1em 0; }
th, td { border: 1px solid #999; padding: 0.3em 0.6em; text-align: left; }
dl.glossary dt { font-weight: bold; margin-top: 0.6em; }
dd.undefined { color: #a00; }
p.doc-meta { color: #555; }
span.icd-ref.unresolved { color: #a00; }\
"""


def term_anchor(term: str) -> str:
    return "term-" + _ANCHOR_SAFE_RE.sub("_", term)


def _render_inlines(nodes: tuple[InlineNode, ...]) -> str:
    parts: list[str] = []
    for node in nodes:
        if isinstance(node, TextSpan):
            parts.append(_html.escape(node.text))
        elif isinstance(node, Link):
            label = node.label or node.target
            parts.append(f'<a href="{_html.escape(node.target, quote=True)}">{_html.escape(label)}</a>')
        elif isinstance(node, TermRef):
            parts.append(f'<a class="term-ref" href="#{term_anchor(node.term)}">{_html.escape(node.term)}</a>')
        elif isinstance(node, IcdRef):
            display = _html.escape(f"{node.doc_id} {node.version}")
            if node.location:
                parts.append(f'<a class="icd-ref" href="{_html.escape(node.location, quote=True)}">{display}</a>')
            else:
                parts.append(f'<span class="icd-ref unresolved">{display}</span>')
    return "".join(parts)


def render(doc: Document, register_tables: Sequence[str] = ()) -> bytes:
    """Render an expanded document to a complete UTF-8 HTML page.

    ``register_tables`` must hold one fragment per rdl block, in order.
    """
    rdl_count = len(doc.rdl_blocks())
    if len(register_tables) != rdl_count:
        raise ValueError(f"expected {rdl_count} register table fragments, got {len(register_tables)}")

    out: list[str] = []
    out.append("<!DOCTYPE html>")
    out.append('<html lang="en">')
    out.append("<head>")
    out.append('<meta charset="utf-8">')
    out.append(f"<title>{_html.escape(doc.title)}</title>")
    out.append(f"<style>\n{_STYLE}\n</style>")
    out.append("</head>")
    out.append("<body>")
    out.append(f"<h1>{_html.escape(doc.title)}</h1>")
    meta = f"{doc.attributes.get('doc-id', '')} {doc.attributes.get('version', '')}".strip()
    out.append(f'<p class="doc-meta">{_html.escape(meta)}</p>')

    table_index = 0
    for block in doc.blocks:
        if isinstance(block, Heading):
            out.append(f"<h{block.level}>{_render_inlines(block.inlines)}</h{block.level}>")
        elif isinstance(block, Paragraph):
            out.append(f"<p>{_render_inlines(block.inlines)}</p>")
        elif isinstance(block, ListBlock):
            out.append("<ul>")
            for item in block.items:
                out.append(f"<li>{_render_inlines(item.inlines)}</li>")
            out.append("</ul>")
        elif isinstance(block, DefinitionList):
            out.append('<dl class="glossary">')
            for entry in block.entries:
                out.append(f'<dt id="{term_anchor(entry.term)}">{_html.escape(entry.term)}</dt>')
                css = "" if entry.defined else ' class="undefined"'
                out.append(f"<dd{css}>{_html.escape(entry.definition)}</dd>")
            out.append("</dl>")
        elif isinstance(block, Table):
            out.append("<table>")
            out.append("<thead><tr>" + "".join(f"<th>{_html.escape(h)}</th>" for h in block.header) + "</tr></thead>")
            out.append("<tbody>")
            for row in block.rows:
                out.append("<tr>" + "".join(f"<td>{_html.escape(cell)}</td>" for cell in row) + "</tr>")
            out.append("</tbody>")
            out.append("</table>")
        elif isinstance(block, RdlBlock):
            out.append(register_tables[table_index])
            table_index += 1
        elif isinstance(block, MacroBlock):
            raise ValueError(f"document contains unexpanded macro '{block.name}'")

    out.append("</body>")
    out.append("</html>")
    return ("\n".join(out) + "\n").encode("utf-8")
