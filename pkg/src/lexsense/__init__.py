"""Unsupervised word sense disambiguation over pluggable sense inventories."""

__version__ = "0.1.0"
