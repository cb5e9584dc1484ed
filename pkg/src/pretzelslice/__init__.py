"""Lattice-embedding obstructions for the pretzel links P(p, q, -p, -q)."""

__version__ = "0.1.0"
