"""Explicit point sets in P^3 with equal Hilbert functions and strongly incomparable Betti diagrams."""

__version__ = "0.1.0"
