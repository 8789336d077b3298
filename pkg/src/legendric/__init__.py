"""Toric Legendrian varieties from weight tuples: exact symplectic checks,
weight polytopes and the smoothness classification."""

__version__ = "0.1.0"
