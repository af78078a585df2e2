"""Exact equivariant computations for Hilbert schemes of points and symmetric
product orbifolds of smooth toric surfaces."""

__version__ = "0.1.0"
