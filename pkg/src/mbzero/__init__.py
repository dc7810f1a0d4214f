"""Numerical laboratory for Mellin-Barnes spectral filters on zeta and beta zeros."""

__version__ = "0.1.0"
