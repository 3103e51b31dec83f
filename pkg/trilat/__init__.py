"""Exact lattice invariants of non-negatively curved sphere triangulations."""

__version__ = "0.1.0"
