"""Exact combinatorics of hyperplane and toric arrangements attached to
Bestvina-Brady and Artin kernel groups."""

from .exact import IntPolynomial, InvariantError

__all__ = ["IntPolynomial", "InvariantError"]
__version__ = "0.1.0"
