"""The ICDML document language: parsing, macro expansion, and rendering."""

from icdoc.markup.ast import Document
from icdoc.markup.parser import ParseError, parse_document

__all__ = ["Document", "ParseError", "parse_document"]
