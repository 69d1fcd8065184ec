"""Exact alcove-model library for Bruhat intervals in affine Weyl groups."""

__version__ = "0.1.0"
