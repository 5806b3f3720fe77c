"""Exact computations with the discrete Heisenberg group acting on
distributions of two-dimensional local fields."""

__version__ = "0.1.0"
