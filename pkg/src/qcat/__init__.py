"""Combinatorial constructions verified by integer homology."""

__version__ = "0.1.0"
