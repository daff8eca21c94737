"""Benchmark harness: parse a run configuration, execute it, export results.

One process runs one seeded configuration and writes five artifacts into the
output directory:

* ``metrics.csv``    - iteration,evaluations,moqd_score,coverage,restarts,failures
* ``heatmap.csv``    - cell,centroid_0,centroid_1,hypervolume,ps_size,visits
* ``visits.csv``     - cell,visits
* ``fronts.json``    - per-cell solutions, raw objectives, threshold points
* ``config.resolved`` -  the fully resolved configuration (JSON); feeding it
  back through ``--config`` reproduces the run bit-identically

Numbers are written with 17 significant digits so every file round-trips
exactly. Flags override config-file values, which override defaults; the
defaults are the full-scale benchmark configuration. Multi-seed sweeps are
shell loops over ``--seed``, not built in.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .archive import CvtArchive
from .domains import make_domain
from .schedulers import RunConfig, run_emitter_como, run_mo_cma_mae, run_mome

__all__ = ["CliInvocation", "main", "parse_config", "run_and_export"]

ALGORITHMS = ("mo-cma-mae", "mome", "emitter-como")
DOMAINS = ("sphere", "rastrigin", "arm")

DEFAULTS = {
    "algorithm": "mo-cma-mae",
    "domain": "sphere",
    "objectives": 2,
    "dimension": 100,
    "iterations": 5000,
    "emitters": 5,
    "batch": 36,
    "cells": 1000,
    "cvt_samples": 50000,
    "alpha": 0.1,
    "epsilon": 1e-3,
    "sigma0": 0.5,
    "size_limit": 10,  # 0 means dynamic (no limit)
    "selection": "mu",
    "restart": "cycle",
    "sigma_iso": 0.05,
    "sigma_line": 0.5,
    "seed": 0,
    "x0": None,  # defaults to the zero vector
}

METRICS_HEADER = "iteration,evaluations,moqd_score,coverage,restarts,failures"
HEATMAP_HEADER = "cell,centroid_0,centroid_1,hypervolume,ps_size,visits"
VISITS_HEADER = "cell,visits"


@dataclass(frozen=True)
class CliInvocation:
    """One resolved benchmark invocation: algorithm, run config, output dir."""

    algorithm: str
    domain: str
    objectives: int
    run: RunConfig
    outdir: Path


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="moqd-bench",
        description="Run one seeded multi-objective quality-diversity benchmark.",
    )
    p.add_argument("--algorithm", choices=ALGORITHMS)
    p.add_argument("--domain", choices=DOMAINS)
    p.add_argument("--objectives", type=int, choices=(2, 3))
    p.add_argument("--iterations", type=int)
    p.add_argument("--emitters", type=int)
    p.add_argument("--batch", type=int)
    p.add_argument("--cells", type=int)
    p.add_argument("--cvt-samples", dest="cvt_samples", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--sigma0", type=float)
    p.add_argument("--size-limit", dest="size_limit", type=int,
                   help="per-cell front size limit; 0 for the dynamic archive")
    p.add_argument("--restart", choices=("basic", "cycle"))
    p.add_argument("--selection", choices=("mu", "filter"))
    p.add_argument("--dimension", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", type=str)
    p.add_argument("--config", type=str, help="JSON config file (flags take precedence)")
    return p


def parse_config(argv=None) -> CliInvocation:
    """Resolve flags over an optional config file over defaults."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    resolved = dict(DEFAULTS)
    outdir = None
    if args.config is not None:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config file: {exc}")
        unknown = set(loaded) - set(DEFAULTS) - {"out"}
        if unknown:
            parser.error(f"unknown config keys: {sorted(unknown)}")
        outdir = loaded.pop("out", None)
        resolved.update(loaded)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            resolved[key] = value
    if args.out is not None:
        outdir = args.out

    try:
        inv = _resolve(resolved, outdir)
    except ValueError as exc:
        parser.error(str(exc))
    return inv


def _resolve(resolved: dict, outdir) -> CliInvocation:
    algorithm = resolved["algorithm"]
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if resolved["domain"] == "arm" and resolved["objectives"] == 3:
        raise ValueError("the arm domain supports 2 objectives only")
    spec = make_domain(resolved["domain"], resolved["dimension"], resolved["objectives"])
    size_limit = resolved["size_limit"]
    if size_limit == 0:
        size_limit = None
    x0 = resolved["x0"]
    if x0 is not None:
        x0 = np.asarray(x0, dtype=np.float64)
        if x0.shape != (spec.dimension,):
            raise ValueError("x0 length does not match the dimension")
    run = RunConfig(
        domain=spec,
        iterations=resolved["iterations"],
        emitters=resolved["emitters"],
        batch=resolved["batch"],
        x0=x0,
        sigma0=resolved["sigma0"],
        alpha=resolved["alpha"],
        epsilon=resolved["epsilon"],
        cells=resolved["cells"],
        cvt_samples=resolved["cvt_samples"],
        size_limit=size_limit,
        selection=resolved["selection"],
        restart=resolved["restart"],
        sigma_iso=resolved["sigma_iso"],
        sigma_line=resolved["sigma_line"],
        seed=resolved["seed"],
    )
    run.validate()
    if outdir is None:
        outdir = (
            f"runs/{algorithm}-{resolved['domain']}"
            f"-k{resolved['objectives']}-seed{resolved['seed']}"
        )
    return CliInvocation(
        algorithm, resolved["domain"], resolved["objectives"], run, Path(outdir)
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_outputs(inv: CliInvocation, archive: CvtArchive, metrics) -> None:
    out = inv.outdir
    lines = [METRICS_HEADER]
    for m in metrics:
        lines.append(
            f"{m.iteration},{m.evaluations},{_fmt(m.moqd_score)},"
            f"{_fmt(m.coverage)},{m.restarts},{m.failures}"
        )
    (out / "metrics.csv").write_text("\n".join(lines) + "\n")

    lines = [HEATMAP_HEADER]
    for cell, c0, c1, hv, ps_size, visits in archive.export_heatmap():
        lines.append(f"{cell},{_fmt(c0)},{_fmt(c1)},{_fmt(hv)},{ps_size},{visits}")
    (out / "heatmap.csv").write_text("\n".join(lines) + "\n")

    lines = [VISITS_HEADER]
    for e, cell in enumerate(archive.cells):
        lines.append(f"{e},{cell.visits}")
    (out / "visits.csv").write_text("\n".join(lines) + "\n")

    (out / "fronts.json").write_text(json.dumps(archive.export_fronts(), indent=1) + "\n")

    run = inv.run
    resolved = {
        "algorithm": inv.algorithm,
        "domain": inv.domain,
        "objectives": inv.objectives,
        "dimension": run.domain.dimension,
        "iterations": run.iterations,
        "emitters": run.emitters,
        "batch": run.batch,
        "cells": run.cells,
        "cvt_samples": run.cvt_samples,
        "alpha": run.alpha,
        "epsilon": run.epsilon,
        "sigma0": run.sigma0,
        "size_limit": 0 if run.size_limit is None else run.size_limit,
        "selection": run.selection,
        "restart": run.restart,
        "sigma_iso": run.sigma_iso,
        "sigma_line": run.sigma_line,
        "seed": run.seed,
        "x0": run.x0.tolist(),
    }
    (out / "config.resolved").write_text(json.dumps(resolved, indent=1) + "\n")


def run_and_export(inv: CliInvocation) -> int:
    """Execute the configured run and write all artifacts; 0 on success."""
    try:
        inv.outdir.mkdir(parents=True, exist_ok=True)
        probe = inv.outdir / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        print(f"error: output directory not writable: {exc}", file=sys.stderr)
        return 1

    if inv.algorithm == "mo-cma-mae":
        archive, metrics = run_mo_cma_mae(inv.run)
    elif inv.algorithm == "mome":
        archive, metrics = run_mome(inv.run)
    else:
        _, archive, metrics = run_emitter_como(inv.run)

    _write_outputs(inv, archive, metrics)
    return 0


def main(argv=None) -> int:
    return run_and_export(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
