"""Jumped Wenger graphs over finite fields: construction, invariants and theorem checks."""

__version__ = "0.1.0"

__all__ = ["__version__"]
