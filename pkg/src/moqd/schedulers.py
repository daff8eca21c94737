"""Full optimization loops over the archive, emitters, and domains.

Three schedulers share the RunConfig/IterationMetrics contract:

* ``run_mo_cma_mae`` - CMA-ES emitters ranked by hypervolume improvement
  over per-cell threshold fronts, with discount bisection, optional
  downsizing, and basic/cycle restarts seeded from archive elites.
* ``run_mome`` - crowding-proportional parent selection with iso+line
  variation over a plain (threshold-free) archive.
* ``run_emitter_como`` - CMA-ES emitters scored against one global Pareto
  front (negated objective-space distance for dominated candidates), with a
  passive archive recording every evaluated candidate for metrics.

Emitters run round-robin and candidates are processed in sample order, so a
run is a deterministic function of its config. Failed evaluations count
toward the budget, rank below everything in the emitter update, and never
reach an archive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pareto
from .archive import CvtArchive, tessellate_cvt
from .cma import CandidateStatus, CmaEs
from .domains import DomainSpec, evaluate_batch

__all__ = [
    "COMO_POPULATION_LIMIT",
    "IterationMetrics",
    "RunConfig",
    "iso_line_variation",
    "run_emitter_como",
    "run_mo_cma_mae",
    "run_mome",
]

# Global Pareto-set cap for the emitter-driven global-front baseline,
# matching the archive budget of 1000 cells x 10 solutions.
COMO_POPULATION_LIMIT = 10000


@dataclass(frozen=True)
class RunConfig:
    """Everything one run depends on; equal configs give identical runs."""

    domain: DomainSpec
    iterations: int = 5000
    emitters: int = 5
    batch: int = 36
    x0: np.ndarray = None  # type: ignore[assignment]  # defaults to zeros
    sigma0: float = 0.5
    alpha: float = 0.1
    epsilon: float = 1e-3
    cells: int = 1000
    cvt_samples: int = 50000
    size_limit: int | None = 10
    selection: str = "mu"
    restart: str = "cycle"
    sigma_iso: float = 0.05
    sigma_line: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.x0 is None:
            object.__setattr__(self, "x0", np.zeros(self.domain.dimension))
        else:
            object.__setattr__(self, "x0", np.asarray(self.x0, dtype=np.float64))

    def validate(self) -> None:
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        for name in ("emitters", "batch", "cells", "cvt_samples"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must be in (0, 1]")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.sigma0 <= 0.0:
            raise ValueError("sigma0 must be positive")
        if self.size_limit is not None and self.size_limit < 2:
            raise ValueError("size_limit must be >= 2 (or None for dynamic)")
        if self.selection not in ("mu", "filter"):
            raise ValueError("selection must be 'mu' or 'filter'")
        if self.restart not in ("basic", "cycle"):
            raise ValueError("restart must be 'basic' or 'cycle'")
        if self.x0.shape != (self.domain.dimension,):
            raise ValueError("x0 dimension does not match the domain")
        if self.cells > self.cvt_samples:
            raise ValueError("cells must not exceed cvt_samples")


@dataclass(frozen=True)
class IterationMetrics:
    """Per-iteration snapshot; evaluations equal iteration * emitters * batch."""

    iteration: int
    evaluations: int
    moqd_score: float
    coverage: float
    restarts: int
    failures: int


def iso_line_variation(parent1, parent2, sigma_iso: float, sigma_line: float,
                       rng: np.random.Generator) -> np.ndarray:
    """Gaussian mutation plus a random step along the inter-parent line."""
    p1 = np.asarray(parent1, dtype=np.float64)
    p2 = np.asarray(parent2, dtype=np.float64)
    if p1.shape != p2.shape:
        raise ValueError("parents must have equal dimension")
    z = rng.standard_normal(p1.shape[0])
    u = rng.standard_normal()
    return p1 + sigma_iso * z + sigma_line * u * (p2 - p1)


def _run_rngs(config: RunConfig) -> tuple[np.random.Generator, np.random.Generator]:
    cvt_ss, run_ss = np.random.SeedSequence(config.seed).spawn(2)
    return np.random.default_rng(cvt_ss), np.random.default_rng(run_ss)


def _build_archive(config: RunConfig, rng_cvt: np.random.Generator,
                   size_limit: int | None, passive: bool) -> CvtArchive:
    centroids = tessellate_cvt(
        config.domain.measure_bounds, config.cells, config.cvt_samples, rng_cvt
    )
    reference = np.zeros(config.domain.objectives)
    return CvtArchive(centroids, reference, size_limit=size_limit, passive=passive)


def run_mo_cma_mae(config: RunConfig) -> tuple[CvtArchive, list[IterationMetrics]]:
    """Threshold-archive loop driven by HVI-ranked CMA-ES emitters."""
    config.validate()
    rng_cvt, rng = _run_rngs(config)
    archive = _build_archive(config, rng_cvt, config.size_limit, passive=False)
    emitters = [CmaEs(config.x0, config.sigma0, config.batch) for _ in range(config.emitters)]
    metrics: list[IterationMetrics] = []
    restarts = 0
    failures = 0
    for it in range(1, config.iterations + 1):
        for es in emitters:
            X = es.ask(config.batch, rng)
            objs, measures, failed = evaluate_batch(X, config.domain)
            scores = np.zeros(config.batch)
            statuses = np.full(config.batch, CandidateStatus.FAILED, dtype=np.int8)
            for i in range(config.batch):
                if failed[i]:
                    failures += 1
                    continue
                out = archive.try_insert(
                    X[i], objs[i], measures[i], alpha=config.alpha, epsilon=config.epsilon
                )
                scores[i] = out.phi
                statuses[i] = (
                    CandidateStatus.INSERTED if out.inserted else CandidateStatus.REJECTED
                )
            es.tell(X, scores, statuses, config.selection)
            if es.check_restart(config.restart, archive.visit_stats()):
                new_mean = (
                    archive.sample_elite(rng) if archive.num_occupied else config.x0
                )
                es.restart(new_mean, config.sigma0)
                restarts += 1
        metrics.append(
            IterationMetrics(
                it,
                it * config.emitters * config.batch,
                archive.moqd_score(),
                archive.coverage(),
                restarts,
                failures,
            )
        )
    return archive, metrics


def _crowding_pool(archive: CvtArchive) -> tuple[list[np.ndarray], np.ndarray]:
    """All archived solutions with within-cell crowding-distance weights.

    Infinite distances are replaced by the cell's maximum finite distance
    (or 1 when the cell has none), so boundary points stay sampleable
    without swamping the rest.
    """
    solutions: list[np.ndarray] = []
    weights: list[float] = []
    for cell in archive.cells:
        if not cell.solutions:
            continue
        d = pareto.crowding_distances(cell.objectives)
        finite = d[np.isfinite(d)]
        cap = float(finite.max()) if finite.size else 1.0
        d = np.where(np.isfinite(d), d, cap)
        solutions.extend(cell.solutions)
        weights.extend(d.tolist())
    return solutions, np.asarray(weights)


def run_mome(config: RunConfig) -> tuple[CvtArchive, list[IterationMetrics]]:
    """Crowding-based map-elites over a plain (threshold-free) archive."""
    config.validate()
    rng_cvt, rng = _run_rngs(config)
    archive = _build_archive(config, rng_cvt, config.size_limit, passive=True)
    metrics: list[IterationMetrics] = []
    failures = 0
    per_iter = config.emitters * config.batch
    for it in range(1, config.iterations + 1):
        if archive.num_occupied == 0:
            X = np.array(
                [
                    config.x0 + config.sigma_iso * rng.standard_normal(config.x0.shape[0])
                    for _ in range(per_iter)
                ]
            )
        else:
            solutions, weights = _crowding_pool(archive)
            total = weights.sum()
            p = weights / total if total > 0 else None
            idx1 = rng.choice(len(solutions), size=per_iter, p=p)
            idx2 = rng.choice(len(solutions), size=per_iter, p=p)
            X = np.array(
                [
                    iso_line_variation(
                        solutions[a], solutions[b], config.sigma_iso, config.sigma_line, rng
                    )
                    for a, b in zip(idx1, idx2)
                ]
            )
        objs, measures, failed = evaluate_batch(X, config.domain)
        for i in range(per_iter):
            if failed[i]:
                failures += 1
                continue
            archive.try_insert(X[i], objs[i], measures[i])
        metrics.append(
            IterationMetrics(
                it, it * per_iter, archive.moqd_score(), archive.coverage(), 0, failures
            )
        )
    return archive, metrics


def run_emitter_como(
    config: RunConfig,
) -> tuple[list[np.ndarray], CvtArchive, list[IterationMetrics]]:
    """Global-front CMA-ES baseline with a passive archive for metrics.

    Candidates non-dominated by the global front score its hypervolume
    improvement and join the population (capped by crowding downsize);
    dominated candidates score the negated Euclidean distance to the front.
    """
    config.validate()
    rng_cvt, rng = _run_rngs(config)
    passive = _build_archive(config, rng_cvt, size_limit=None, passive=True)
    reference = np.zeros(config.domain.objectives)
    population: list[np.ndarray] = []
    front = pareto.empty_front(config.domain.objectives)
    emitters = [CmaEs(config.x0, config.sigma0, config.batch) for _ in range(config.emitters)]
    metrics: list[IterationMetrics] = []
    restarts = 0
    failures = 0
    for it in range(1, config.iterations + 1):
        for es in emitters:
            X = es.ask(config.batch, rng)
            objs, measures, failed = evaluate_batch(X, config.domain)
            scores = np.zeros(config.batch)
            statuses = np.full(config.batch, CandidateStatus.FAILED, dtype=np.int8)
            for i in range(config.batch):
                if failed[i]:
                    failures += 1
                    continue
                passive.try_insert(X[i], objs[i], measures[i])
                keep = pareto.nondominated_insert_mask(front, objs[i])
                if keep is None:
                    # weakly dominated: negated distance to the front
                    scores[i] = -float(
                        np.min(np.linalg.norm(front - objs[i], axis=1))
                    )
                    statuses[i] = CandidateStatus.REJECTED
                    continue
                scores[i] = pareto.hvi(objs[i], front, reference)
                statuses[i] = CandidateStatus.INSERTED
                population = [s for s, k in zip(population, keep) if k] + [X[i].copy()]
                front = np.vstack([front[keep], objs[i][None, :]])
                if front.shape[0] > COMO_POPULATION_LIMIT:
                    kept = pareto.downsize_indices(front, COMO_POPULATION_LIMIT)
                    front = front[kept]
                    population = [population[j] for j in kept]
            es.tell(X, scores, statuses, config.selection)
            if es.check_restart("basic"):
                if population:
                    new_mean = population[int(rng.integers(len(population)))]
                else:
                    new_mean = config.x0
                es.restart(new_mean, config.sigma0)
                restarts += 1
        metrics.append(
            IterationMetrics(
                it,
                it * config.emitters * config.batch,
                passive.moqd_score(),
                passive.coverage(),
                restarts,
                failures,
            )
        )
    return population, passive, metrics
