"""Rendering layer for qcool experiment outputs.

Strictly presentational: every plotted series (estimates, oracles, bounds)
comes from CSV columns produced by the simulation package; nothing is
recomputed here beyond elementwise differences for the error inset.
"""

from .figures import FigureSpec, SchemaError, plot_scaling, plot_spectrum

__version__ = "0.1.0"

__all__ = ["FigureSpec", "SchemaError", "plot_spectrum", "plot_scaling", "__version__"]
