"""Verification toolkit for a family of weighted Fano threefolds and the links between them."""

__version__ = "0.1.0"
