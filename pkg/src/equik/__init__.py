"""Exact computation of circle-valued cohomology for group actions,
multiplicative structures on the associated truncated complexes, shuffle and
transfer comparisons, and the fusion-level consequences (equivariant bundle
categories and their Grothendieck rings)."""

__version__ = "0.1.0"
