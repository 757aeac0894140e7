"""Exact arithmetic kernels: polynomials, integer matrices, prime fields."""
