"""Numerical toolkit for moment maps, Springer types and fiberwise Dehn
twists on the cotangent bundle of the SU(n) flag variety."""

__version__ = "0.1.0"
