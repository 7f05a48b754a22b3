"""Depth-shaded figure rendering for bellqfi sweep CSVs."""

from .io import FIGURE_KINDS, SchemaError, group_by_size, read_many, read_rows
from .render import FigureSpec, depth_bands, render

__version__ = "0.1.0"

__all__ = [
    "FIGURE_KINDS",
    "FigureSpec",
    "SchemaError",
    "depth_bands",
    "group_by_size",
    "read_many",
    "read_rows",
    "render",
]
