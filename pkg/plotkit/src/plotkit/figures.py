"""Figure rendering: Voronoi archive heatmaps and metric curves with bands.

Pure presentation over parsed run directories; no algorithm quantities are
recomputed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.patches import Patch
from scipy.spatial import Voronoi

from .runs import RunDirectory

__all__ = ["CurvesResult", "HeatmapResult", "plot_curves", "plot_heatmap"]

METRIC_LABELS = {"moqd_score": "MOQD-score", "coverage": "Coverage"}


@dataclass(frozen=True)
class HeatmapResult:
    path: Path
    cells: int
    occupied: int


@dataclass(frozen=True)
class CurvesResult:
    path: Path
    evaluations: np.ndarray
    mean: np.ndarray
    band: np.ndarray  # half-width of the 95% interval


def plot_heatmap(run: RunDirectory, out) -> HeatmapResult:
    """Voronoi cells colored by per-cell hypervolume; empty cells blank."""
    out = Path(out)
    centroids = np.column_stack([run.heatmap["centroid_0"], run.heatmap["centroid_1"]])
    hv = run.heatmap["hypervolume"]
    occupied = run.heatmap["ps_size"] > 0

    lo = centroids.min(axis=0)
    hi = centroids.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    # distant corner points close the outer Voronoi regions
    far = 100.0 * span.max()
    corners = np.array(
        [
            [lo[0] - far, lo[1] - far],
            [lo[0] - far, hi[1] + far],
            [hi[0] + far, lo[1] - far],
            [hi[0] + far, hi[1] + far],
        ]
    )
    vor = Voronoi(np.vstack([centroids, corners]))

    vmax = float(hv.max()) if np.any(occupied) else 1.0
    cmap = plt.get_cmap("viridis")
    fig, ax = plt.subplots(figsize=(6.5, 6))
    for i in range(centroids.shape[0]):
        region = vor.regions[vor.point_region[i]]
        if -1 in region or not region:
            continue
        polygon = vor.vertices[region]
        color = cmap(hv[i] / vmax) if occupied[i] else "white"
        ax.fill(polygon[:, 0], polygon[:, 1], facecolor=color, edgecolor="0.8", lw=0.3)
    pad = 0.03 * span
    ax.set_xlim(lo[0] - pad[0], hi[0] + pad[0])
    ax.set_ylim(lo[1] - pad[1], hi[1] + pad[1])
    ax.set_xlabel("measure 1")
    ax.set_ylabel("measure 2")
    mappable = plt.cm.ScalarMappable(cmap=cmap, norm=plt.Normalize(0.0, vmax))
    fig.colorbar(mappable, ax=ax, label="hypervolume")
    n = centroids.shape[0]
    ax.legend(handles=[Patch(facecolor="0.9", edgecolor="0.6", label=f"{n} cells")],
              loc="upper right")
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return HeatmapResult(out, n, int(occupied.sum()))


def plot_curves(runs: list[RunDirectory], metric: str, out) -> CurvesResult:
    """Mean curve across runs with a 95% normal-approximation band."""
    out = Path(out)
    if metric not in METRIC_LABELS:
        raise ValueError(f"metric must be one of {sorted(METRIC_LABELS)}, got {metric!r}")
    if not runs:
        raise ValueError("at least one run directory is required")
    lengths = {run.iterations for run in runs}
    if len(lengths) != 1:
        raise ValueError(f"runs have mismatched iteration counts: {sorted(lengths)}")

    ys = np.vstack([run.metrics[metric] for run in runs])
    x = runs[0].metrics["evaluations"]
    mean = ys.mean(axis=0)
    if ys.shape[0] > 1:
        stderr = ys.std(axis=0, ddof=1) / np.sqrt(ys.shape[0])
        # identical columns must give an exactly zero band (the two-pass
        # std picks up last-ulp noise from the mean otherwise)
        stderr[ys.max(axis=0) == ys.min(axis=0)] = 0.0
    else:
        stderr = np.zeros_like(mean)
    band = 1.96 * stderr

    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.plot(x, mean, lw=1.5)
    ax.fill_between(x, mean - band, mean + band, alpha=0.3)
    ax.set_xlabel("evaluations")
    ax.set_ylabel(METRIC_LABELS[metric])
    ax.set_title(f"{METRIC_LABELS[metric]} over {ys.shape[0]} run(s)")
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return CurvesResult(out, x, mean, band)
