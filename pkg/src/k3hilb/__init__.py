"""Birationality of Hilbert schemes of points on derived-equivalent K3 surfaces."""

__version__ = "0.1.0"
