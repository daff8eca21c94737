import json

import numpy as np
import pytest


def write_run_dir(path, cells=6, iterations=8, seed=0, empty=False):
    """Craft a directory matching the moqd-bench file contract."""
    rng = np.random.default_rng(seed)
    path.mkdir(parents=True, exist_ok=True)

    lines = ["iteration,evaluations,moqd_score,coverage,restarts,failures"]
    score = 0.0
    for it in range(1, iterations + 1):
        score += float(rng.uniform(0, 5)) if not empty else 0.0
        cov = 0.0 if empty else min(1.0, 0.1 * it)
        lines.append(f"{it},{it * 24},{score!r},{float(cov)!r},0,0")
    (path / "metrics.csv").write_text("\n".join(lines) + "\n")

    lines = ["cell,centroid_0,centroid_1,hypervolume,ps_size,visits"]
    pts = rng.uniform(-10, 10, (cells, 2))
    for e in range(cells):
        hv = 0.0 if empty else float(rng.uniform(0, 100))
        ps = 0 if empty else int(rng.integers(1, 5))
        lines.append(
            f"{e},{float(pts[e, 0])!r},{float(pts[e, 1])!r},{hv!r},{ps},{e + 1}"
        )
    (path / "heatmap.csv").write_text("\n".join(lines) + "\n")

    lines = ["cell,visits"] + [f"{e},{e + 1}" for e in range(cells)]
    (path / "visits.csv").write_text("\n".join(lines) + "\n")

    (path / "fronts.json").write_text(json.dumps({"reference": [0.0, 0.0], "cells": []}))
    return path


@pytest.fixture
def run_dir(tmp_path):
    return write_run_dir(tmp_path / "run")
