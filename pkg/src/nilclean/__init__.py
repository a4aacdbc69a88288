"""Finite rings and nil-clean style classification."""

__version__ = "0.1.0"
