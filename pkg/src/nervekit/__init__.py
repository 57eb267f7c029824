"""Finite category theory, nerves, integer homology and zig-zag moduli
categories, at a scale where every claim can be checked exhaustively."""

__version__ = "0.1.0"
