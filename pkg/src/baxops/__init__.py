"""Exact verification of Baxter-operator constructions and operad dimension counts."""

__version__ = "0.1.0"
