"""Graded identities of the Cayley-Dickson octonions, with exact rational arithmetic."""

from .cd_algebra import CayleyDickson
from .free import Mul, Poly, Var
from .group import GroupElem, elem
from .identities import is_identity, is_identity_generic, is_identity_multilinear
from .parsing import format_poly, parse

__all__ = [
    "CayleyDickson",
    "GroupElem",
    "Mul",
    "Poly",
    "Var",
    "elem",
    "format_poly",
    "is_identity",
    "is_identity_generic",
    "is_identity_multilinear",
    "parse",
]
__version__ = "0.1.0"
