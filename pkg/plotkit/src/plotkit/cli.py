"""Command-line entry points: plot-heatmap and plot-curves."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import plot_curves, plot_heatmap
from .runs import RunDirectory, RunDirectoryError


def heatmap_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-heatmap",
        description="Render the archive heatmap of one moqd-bench run directory.",
    )
    parser.add_argument("rundir", type=Path)
    parser.add_argument("--out", type=Path, default=None,
                        help="output image path (default: <rundir>/heatmap.png)")
    args = parser.parse_args(argv)
    out = args.out if args.out is not None else args.rundir / "heatmap.png"
    try:
        run = RunDirectory.load(args.rundir)
        result = plot_heatmap(run, out)
    except (RunDirectoryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.path} ({result.occupied}/{result.cells} cells occupied)")
    return 0


def curves_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-curves",
        description="Render a metric curve with a 95% confidence band across runs.",
    )
    parser.add_argument("rundirs", nargs="+", type=Path)
    parser.add_argument("--metric", choices=("moqd_score", "coverage"), default="moqd_score")
    parser.add_argument("--out", type=Path, required=True)
    args = parser.parse_args(argv)
    try:
        runs = [RunDirectory.load(d) for d in args.rundirs]
        result = plot_curves(runs, args.metric, args.out)
    except (RunDirectoryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.path} ({len(runs)} runs, final mean {result.mean[-1]:.6g})")
    return 0


if __name__ == "__main__":
    sys.exit(heatmap_main())
