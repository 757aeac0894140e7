"""Exact computations for Weil-number sieves on quaternionic Shimura varieties."""

__version__ = "0.1.0"
