"""Exact computations for finite noncommutative geometries over F_p[x]."""

__version__ = "0.1.0"
