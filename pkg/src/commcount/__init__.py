"""Arithmetic obstructions and subgroup counting behind commensurability counts
of hyperbolic 4-manifolds built from Q(sqrt 5) quadratic forms."""

__version__ = "0.1.0"
