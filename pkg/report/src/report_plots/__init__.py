"""Figure rendering for bohrlab results CSVs.

Reads the versioned results CSV, groups rows into panels, and draws
estimate brackets against theorem envelopes across the dimension axis.
The renderer never recomputes mathematics; it only displays columns.
"""

from .render import PanelReport, PlotSpec, SchemaError, read_results, render

__version__ = "0.1.0"
