"""Counting A_n fields through integral points on discriminant fibers."""

__version__ = "0.1.0"
