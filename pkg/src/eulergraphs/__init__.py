"""Exact graph sums for equivariant Euler characteristics of moduli spaces."""

__version__ = "0.1.0"
