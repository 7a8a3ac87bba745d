"""Exact-arithmetic checks for automorphisms of complete intersections."""

__version__ = "0.1.0"
