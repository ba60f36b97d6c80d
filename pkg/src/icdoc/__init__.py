"""icdoc: a docs-as-code toolchain for interface control documents.

The package splits into five areas: ``markup`` (the ICDML document
language), ``rdl`` (the embedded register-description language and its
generated artifacts), ``gates`` (documentation quality checks),
``tracker`` (the central publication registry and its HTTP interface),
and ``pipeline`` (the build/check/serve command line tying it together).
"""

from icdoc.versions import Version, VersionError

__all__ = ["Version", "VersionError"]
