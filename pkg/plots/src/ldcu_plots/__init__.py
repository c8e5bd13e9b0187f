"""Rendering of solver snapshot CSV files as publication-style figures."""

from .figures import PlotSpec, plot_flags, plot_line, plot_pcolor, render
from .reader import ParseError, Snapshot, read_snapshot

__all__ = [
    "ParseError",
    "PlotSpec",
    "Snapshot",
    "plot_flags",
    "plot_line",
    "plot_pcolor",
    "read_snapshot",
    "render",
]
