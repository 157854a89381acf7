"""Exact spectral moments of sparse random block matrices."""

__version__ = "0.1.0"
