"""Loading and validating moqd-bench output directories.

A run directory must contain metrics.csv, heatmap.csv, visits.csv, and
fronts.json with the exact column contracts of the benchmark CLI. Nothing
here recomputes algorithm quantities; the tables are parsed verbatim.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["HEATMAP_COLUMNS", "METRICS_COLUMNS", "RunDirectory", "RunDirectoryError"]

METRICS_COLUMNS = ("iteration", "evaluations", "moqd_score", "coverage", "restarts", "failures")
HEATMAP_COLUMNS = ("cell", "centroid_0", "centroid_1", "hypervolume", "ps_size", "visits")
VISITS_COLUMNS = ("cell", "visits")


class RunDirectoryError(ValueError):
    """A run directory is missing files or violates the column contract."""


def _read_table(path: Path, columns: tuple[str, ...]) -> dict[str, np.ndarray]:
    if not path.is_file():
        raise RunDirectoryError(f"missing file: {path}")
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RunDirectoryError(f"empty file: {path}") from None
        if tuple(header) != columns:
            raise RunDirectoryError(
                f"{path}: expected header {','.join(columns)}, got {','.join(header)}"
            )
        rows = list(reader)
    try:
        data = np.array([[float(v) for v in row] for row in rows], dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise RunDirectoryError(f"{path}: unparseable row ({exc})") from None
    if rows and data.shape[1] != len(columns):
        raise RunDirectoryError(f"{path}: ragged rows")
    if not rows:
        data = np.empty((0, len(columns)))
    return {name: data[:, i] for i, name in enumerate(columns)}


@dataclass(frozen=True)
class RunDirectory:
    """One parsed bench output directory."""

    path: Path
    metrics: dict[str, np.ndarray]
    heatmap: dict[str, np.ndarray]
    visits: dict[str, np.ndarray]
    fronts: dict

    @classmethod
    def load(cls, path) -> "RunDirectory":
        path = Path(path)
        if not path.is_dir():
            raise RunDirectoryError(f"not a directory: {path}")
        metrics = _read_table(path / "metrics.csv", METRICS_COLUMNS)
        heatmap = _read_table(path / "heatmap.csv", HEATMAP_COLUMNS)
        visits = _read_table(path / "visits.csv", VISITS_COLUMNS)
        fronts_path = path / "fronts.json"
        if not fronts_path.is_file():
            raise RunDirectoryError(f"missing file: {fronts_path}")
        try:
            fronts = json.loads(fronts_path.read_text())
        except json.JSONDecodeError as exc:
            raise RunDirectoryError(f"{fronts_path}: invalid JSON ({exc})") from None
        return cls(path, metrics, heatmap, visits, fronts)

    @property
    def iterations(self) -> int:
        return self.metrics["iteration"].shape[0]

    @property
    def cells(self) -> int:
        return self.heatmap["cell"].shape[0]
