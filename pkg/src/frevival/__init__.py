"""Exact detection of fractional revival on quasi-abelian Cayley graphs."""

__version__ = "0.1.0"
SCHEMA = "frevival/1"
