"""Exact Clifford algebra kernel with signature-changing products."""

__version__ = "0.1.0"
