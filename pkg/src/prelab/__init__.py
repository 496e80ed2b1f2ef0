"""Preorder-enriched relations, monoids on them, spiders and pregroup parsing."""
from .enumeration import CatalogConfig, catalog, fixtures, subjects
from .grammar import Lexicon, make_lexicon, recognize
from .monoid import PrelMonoid, build_monoid, classify, from_table, search_adjoints
from .order import Preorder, chain, close_preorder, discrete
from .prelation import Prelation, compose, converse_dual, ddag, tensor
from .spider import pregroup_cover, union_monoid, verify_theorem

__all__ = [
    "CatalogConfig", "catalog", "fixtures", "subjects",
    "Lexicon", "make_lexicon", "recognize",
    "PrelMonoid", "build_monoid", "classify", "from_table", "search_adjoints",
    "Preorder", "chain", "close_preorder", "discrete",
    "Prelation", "compose", "converse_dual", "ddag", "tensor",
    "pregroup_cover", "union_monoid", "verify_theorem",
]
__version__ = "0.1.0"
