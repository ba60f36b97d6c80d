"""The embedded register-description language and its generated artifacts."""

from icdoc.rdl.model import Field, Register, RegisterMap, RdlViolation
from icdoc.rdl.parser import parse_rdl
from icdoc.rdl.validate import validate_rdl

__all__ = ["Field", "Register", "RegisterMap", "RdlViolation", "parse_rdl", "validate_rdl"]
