"""Cayley-graph expanders over SL(2, Z_n) for message passing."""

__version__ = "0.1.0"
