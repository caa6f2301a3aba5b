"""Symbolic and ordinary powers of edge ideals, with exact CM / FLC / (S2) checkers."""

__version__ = "0.1.0"
