"""Figures from moqd-bench output directories (pure presentation)."""

from .figures import CurvesResult, HeatmapResult, plot_curves, plot_heatmap
from .runs import RunDirectory, RunDirectoryError

__version__ = "0.1.0"

__all__ = [
    "CurvesResult",
    "HeatmapResult",
    "RunDirectory",
    "RunDirectoryError",
    "__version__",
    "plot_curves",
    "plot_heatmap",
]
