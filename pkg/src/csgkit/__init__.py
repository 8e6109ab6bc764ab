"""Exact computations with crossed simplicial groups and twisted bar constructions."""

__version__ = "0.1.0"
