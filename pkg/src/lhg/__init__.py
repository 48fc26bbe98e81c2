"""Linear r-graphs, generalized crowns and their extremal constructions."""

from .core import LinearHypergraph, parse, validate
from .patterns import Pattern, find_embedding, is_free, make_crown, make_cstar

__all__ = [
    "LinearHypergraph",
    "Pattern",
    "find_embedding",
    "is_free",
    "make_crown",
    "make_cstar",
    "parse",
    "validate",
]
