"""Exact verification of twisted super Yangians on evaluation modules."""

__version__ = "0.1.0"
