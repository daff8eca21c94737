"""CVT-tessellated archive of per-cell Pareto sets and threshold fronts.

Measure space is partitioned by nearest-centroid cells (centroids from
Lloyd's k-means over uniform samples). Each cell holds the Pareto set of
raw objective vectors plus, in threshold mode, a front of discounted
objective points that lags the real front and gates acceptance: a candidate
scores the hypervolume improvement over the threshold front, and on
acceptance a discounted copy closing a fraction ``alpha`` of the closable
gap (found by bisection) is inserted into the threshold front.

Passive mode scores candidates against the raw front directly and keeps no
thresholds; with a size limit it also downsizes, which covers both plain
map-elites bookkeeping and the metrics-only archives attached to non-QD
algorithms.

The archive is single-writer: insertions are applied sequentially; metric
reads are safe whenever no writer is active.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from . import pareto
from .cma import ArchiveVisitStats

__all__ = [
    "BISECTION_MAX_STEPS",
    "CellState",
    "CvtArchive",
    "InsertionOutcome",
    "bisect_discount",
    "tessellate_cvt",
]

# Bisection halves [0, 1] at most this many times; the interval width is
# then far below any tolerance in use.
BISECTION_MAX_STEPS = 64

_LLOYD_MAX_ITERS = 100
_LLOYD_SHIFT_TOL = 1e-6  # times the domain diagonal


def tessellate_cvt(bounds, cells: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Centroidal Voronoi tessellation of a box via Lloyd's k-means.

    Draws ``samples`` uniform points, then iterates nearest-centroid
    assignment and cluster means until the maximum centroid shift falls
    below 1e-6 of the domain diagonal, or 100 iterations. Deterministic
    under the given generator.
    """
    bounds = np.asarray(bounds, dtype=np.float64)
    if bounds.ndim != 2 or bounds.shape[1] != 2:
        raise ValueError("bounds must be a sequence of (low, high) pairs")
    low, high = bounds[:, 0], bounds[:, 1]
    if np.any(low >= high):
        raise ValueError("degenerate bounds: low must be < high in every dimension")
    if cells < 1:
        raise ValueError("cells must be positive")
    if cells > samples:
        raise ValueError("cells must not exceed samples")

    pts = rng.uniform(low, high, size=(samples, bounds.shape[0]))
    centroids = pts[rng.choice(samples, size=cells, replace=False)]
    tol = _LLOYD_SHIFT_TOL * float(np.linalg.norm(high - low))
    for _ in range(_LLOYD_MAX_ITERS):
        labels = cKDTree(centroids).query(pts)[1]
        counts = np.bincount(labels, minlength=cells)
        sums = np.column_stack(
            [np.bincount(labels, weights=pts[:, d], minlength=cells) for d in range(pts.shape[1])]
        )
        new = np.where(counts[:, None] > 0, sums / np.maximum(counts, 1)[:, None], centroids)
        shift = float(np.max(np.linalg.norm(new - centroids, axis=1)))
        centroids = new
        if shift < tol:
            break
    return centroids


def bisect_discount(f, threshold_front, alpha: float, epsilon: float, ref) -> float:
    """Discount factor d in [0, 1] closing a fraction ``alpha`` of the gap.

    Bisects until hvi(d*f) lands in [alpha*hvi(f) - epsilon, alpha*hvi(f)];
    the error is one-sided (never above the target) because threshold-front
    expansion is irreversible. Requires hvi(f) > 0.
    """
    f = np.asarray(f, dtype=np.float64)
    full = pareto.hvi(f, threshold_front, ref)
    if full <= 0.0:
        raise ValueError("bisect_discount requires a point with positive improvement")
    target = alpha * full
    lo, hi = 0.0, 1.0
    for _ in range(BISECTION_MAX_STEPS):
        d = 0.5 * (lo + hi)
        mid = pareto.hvi(d * f, threshold_front, ref)
        if mid > target:
            hi = d
        else:
            lo = d
            if target - mid <= epsilon:
                return d
    return lo


@dataclass
class CellState:
    """One archive cell: paired solutions/raw objectives plus the threshold front."""

    solutions: list[np.ndarray] = field(default_factory=list)
    objectives: np.ndarray = None  # type: ignore[assignment]
    threshold: np.ndarray = None  # type: ignore[assignment]
    visits: int = 0


@dataclass(frozen=True)
class InsertionOutcome:
    """Result of offering one candidate: cell, score, acceptance, discount."""

    cell_index: int
    phi: float
    inserted: bool
    discount: float | None = None


class CvtArchive:
    """Nearest-centroid archive over measure space with per-cell fronts."""

    def __init__(self, centroids, reference, size_limit: int | None = None,
                 passive: bool = False):
        centroids = np.asarray(centroids, dtype=np.float64)
        if centroids.ndim != 2:
            raise ValueError("centroids must be a 2-D array")
        if np.unique(centroids, axis=0).shape[0] != centroids.shape[0]:
            raise ValueError("centroids must be pairwise distinct")
        reference = np.asarray(reference, dtype=np.float64)
        if reference.shape[0] not in (2, 3):
            raise ValueError("reference must have 2 or 3 objectives")
        if size_limit is not None and size_limit < 2:
            raise ValueError("size_limit must be >= 2")
        self.centroids = centroids
        self.reference = reference
        self.size_limit = size_limit
        self.passive = passive
        k = reference.shape[0]
        self.cells = [
            CellState(objectives=pareto.empty_front(k), threshold=pareto.empty_front(k))
            for _ in range(centroids.shape[0])
        ]
        self.last_visited: int | None = None
        self._total_visits = 0

    # -- geometry ---------------------------------------------------------

    def assign_cell(self, measures) -> int:
        """Index of the Euclidean-nearest centroid; ties go to the lowest index."""
        m = np.asarray(measures, dtype=np.float64)
        if m.shape[0] != self.centroids.shape[1]:
            raise ValueError("measure dimension does not match the centroids")
        d2 = np.sum((self.centroids - m) ** 2, axis=1)
        return int(np.argmin(d2))

    # -- insertion --------------------------------------------------------

    def try_insert(self, solution, objectives, measures,
                   alpha: float | None = None, epsilon: float | None = None) -> InsertionOutcome:
        """Offer one evaluated solution to its cell.

        Scores the hypervolume improvement over the cell's gating front
        (threshold front, or the raw front in passive mode); positive scores
        insert into the Pareto set, update the threshold front through the
        discounted copy, and downsize when a size limit is set. Visits are
        counted for every offer.
        """
        f = np.asarray(objectives, dtype=np.float64)
        e = self.assign_cell(measures)
        cell = self.cells[e]
        cell.visits += 1
        self._total_visits += 1
        self.last_visited = e

        gate = cell.objectives if self.passive else cell.threshold
        phi = pareto.hvi(f, gate, self.reference)
        if phi <= 0.0:
            return InsertionOutcome(e, phi, False)

        self._insert_pareto(cell, solution, f)
        discount = None
        if not self.passive:
            if alpha is None or epsilon is None:
                raise ValueError("threshold insertion requires alpha and epsilon")
            discount = bisect_discount(f, cell.threshold, alpha, epsilon, self.reference)
            cell.threshold, _ = pareto.insert_nondominated(cell.threshold, discount * f)
            if self.size_limit is not None and cell.threshold.shape[0] > self.size_limit:
                cell.threshold = pareto.downsize(cell.threshold, self.size_limit)
        if self.size_limit is not None and cell.objectives.shape[0] > self.size_limit:
            kept = pareto.downsize_indices(cell.objectives, self.size_limit)
            cell.objectives = cell.objectives[kept]
            cell.solutions = [cell.solutions[i] for i in kept]
        return InsertionOutcome(e, phi, True, discount)

    @staticmethod
    def _insert_pareto(cell: CellState, solution, f: np.ndarray) -> bool:
        keep = pareto.nondominated_insert_mask(cell.objectives, f)
        if keep is None:
            return False
        cell.solutions = [s for s, k in zip(cell.solutions, keep) if k] + [
            np.array(solution, dtype=np.float64, copy=True)
        ]
        cell.objectives = np.vstack([cell.objectives[keep], f[None, :]])
        return True

    # -- metrics and sampling ----------------------------------------------

    @property
    def num_occupied(self) -> int:
        return sum(1 for c in self.cells if c.objectives.shape[0] > 0)

    def cell_hypervolume(self, e: int) -> float:
        return pareto.hypervolume(self.cells[e].objectives, self.reference)

    def moqd_score(self) -> float:
        """Sum of per-cell hypervolumes of the raw Pareto fronts.

        Exactly-rounded summation, so independently re-summing exported
        per-cell values reproduces this number bit-for-bit.
        """
        return math.fsum(self.cell_hypervolume(e) for e in range(len(self.cells)))

    def coverage(self) -> float:
        """Fraction of cells holding at least one solution."""
        return self.num_occupied / len(self.cells)

    def sample_elite(self, rng: np.random.Generator) -> np.ndarray:
        """Uniformly pick a non-empty cell, then a solution within it."""
        occupied = [e for e, c in enumerate(self.cells) if c.solutions]
        if not occupied:
            raise ValueError("cannot sample from an empty archive")
        cell = self.cells[occupied[int(rng.integers(len(occupied)))]]
        return cell.solutions[int(rng.integers(len(cell.solutions)))].copy()

    def visit_stats(self) -> ArchiveVisitStats:
        """Visit count of the most recently visited cell, and the mean over all cells."""
        last = 0.0
        if self.last_visited is not None:
            last = float(self.cells[self.last_visited].visits)
        return ArchiveVisitStats(last, self._total_visits / len(self.cells))

    # -- exports ------------------------------------------------------------

    def export_heatmap(self) -> list[tuple]:
        """One row per cell: (cell, *centroid, hypervolume, ps_size, visits)."""
        rows = []
        for e, cell in enumerate(self.cells):
            rows.append(
                (
                    e,
                    *(float(v) for v in self.centroids[e]),
                    self.cell_hypervolume(e),
                    cell.objectives.shape[0],
                    cell.visits,
                )
            )
        return rows

    def export_fronts(self) -> dict:
        """Non-empty cells with solutions, raw objectives, and threshold points."""
        out = []
        for e, cell in enumerate(self.cells):
            if cell.objectives.shape[0] == 0:
                continue
            out.append(
                {
                    "cell": e,
                    "centroid": [float(v) for v in self.centroids[e]],
                    "solutions": [s.tolist() for s in cell.solutions],
                    "objectives": cell.objectives.tolist(),
                    "threshold_front": cell.threshold.tolist(),
                }
            )
        return {"reference": self.reference.tolist(), "cells": out}
