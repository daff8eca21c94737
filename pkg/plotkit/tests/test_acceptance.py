"""Acceptance: render real bench output without error; identical runs give a
zero-width band. Exercises the benchmark CLI as an external interface."""

import shutil
import subprocess

import numpy as np
import pytest

from plotkit.figures import plot_curves, plot_heatmap
from plotkit.runs import RunDirectory

BENCH = shutil.which("moqd-bench")

needs_bench = pytest.mark.skipif(BENCH is None, reason="moqd-bench not on PATH")


def bench(outdir, seed=5):
    cmd = [
        BENCH, "--domain", "sphere", "--dimension", "8", "--iterations", "15",
        "--emitters", "2", "--batch", "6", "--cells", "25", "--cvt-samples", "500",
        "--seed", str(seed), "--out", str(outdir),
    ]
    subprocess.run(cmd, check=True, capture_output=True)
    return outdir


@needs_bench
def test_renders_desk_scale_run_directory(tmp_path):
    run = RunDirectory.load(bench(tmp_path / "run"))
    heat = plot_heatmap(run, tmp_path / "heatmap.png")
    score = plot_curves([run], "moqd_score", tmp_path / "score.png")
    cov = plot_curves([run], "coverage", tmp_path / "coverage.png")
    assert heat.path.is_file() and score.path.is_file() and cov.path.is_file()
    assert heat.cells == 25
    print("[PASS] plotkit renders a heatmap and both metric curves from a bench run")


@needs_bench
def test_five_identical_runs_zero_width_band(tmp_path):
    runs = [RunDirectory.load(bench(tmp_path / f"run{i}", seed=5)) for i in range(5)]
    result = plot_curves(runs, "moqd_score", tmp_path / "band.png")
    assert np.all(result.band == 0.0)
    print("[PASS] five identical runs yield a zero-width confidence band")
