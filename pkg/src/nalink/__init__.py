"""Combinatorial models of normalized non-archimedean links of plane-curve pairs."""

__version__ = "0.1.0"
