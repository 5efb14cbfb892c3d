"""Figures for fuzzy-casimir output tables."""

__version__ = "0.1.0"

from .io import Table, load_table, require_columns

__all__ = ["Table", "load_table", "require_columns", "__version__"]
