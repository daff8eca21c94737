"""Dominance relations, Pareto-front maintenance, crowding, and hypervolume.

Fronts are ``(n, k)`` float arrays of maximization objectives, k in {2, 3},
kept mutually non-dominated and free of duplicates. All functions are pure:
fronts go in by value and come out as new arrays, so concurrent readers are
safe. Hypervolume and HVI dispatch to the selected kernel backend
(``moqd._kernels``).
"""

from __future__ import annotations

import numpy as np

from . import _kernels

__all__ = [
    "dominates",
    "empty_front",
    "insert_nondominated",
    "nondominated_insert_mask",
    "hypervolume",
    "hvi",
    "crowding_distances",
    "downsize",
    "downsize_indices",
]

dominates = _kernels.dominates
hypervolume = _kernels.hypervolume
hvi = _kernels.hvi


def empty_front(k: int) -> np.ndarray:
    """An empty front with k objectives."""
    return np.empty((0, k), dtype=np.float64)


def nondominated_insert_mask(front: np.ndarray, p: np.ndarray) -> np.ndarray | None:
    """Survivor mask for inserting ``p`` into ``front``, or None if rejected.

    ``p`` is rejected when weakly dominated by any member (duplicates
    included). Otherwise the mask flags members not dominated by ``p``;
    callers append ``p`` after the surviving rows, which preserves insertion
    order for downstream tie-breaking.
    """
    p = np.asarray(p, dtype=np.float64)
    if front.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if front.shape[1] != p.shape[0]:
        raise ValueError("objective vectors must be 1-D with equal length")
    if np.any(np.all(front >= p, axis=1)):
        return None
    return ~np.all(p >= front, axis=1)


def insert_nondominated(front: np.ndarray, p) -> tuple[np.ndarray, bool]:
    """Insert ``p`` into a mutually non-dominated front.

    Returns ``(new_front, inserted)``. A point weakly dominated by any
    member (including an exact duplicate) leaves the front unchanged;
    otherwise members dominated by ``p`` are dropped and ``p`` is appended.
    """
    front = np.asarray(front, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    keep = nondominated_insert_mask(front, p)
    if keep is None:
        return front, False
    return np.vstack([front[keep], p[None, :]]), True


def crowding_distances(front: np.ndarray) -> np.ndarray:
    """Per-point crowding distance on a front of >= 1 points.

    For each objective, points attaining the extreme values get infinite
    distance and interior points accumulate the normalized gap between their
    sorted neighbors; objectives with zero range contribute nothing.
    """
    front = np.asarray(front, dtype=np.float64)
    m = front.shape[0]
    if m == 0:
        raise ValueError("crowding distance requires a non-empty front")
    if m == 1:
        return np.array([np.inf])
    dist = np.zeros(m)
    boundary = np.zeros(m, dtype=bool)
    for j in range(front.shape[1]):
        vals = front[:, j]
        vmin, vmax = vals.min(), vals.max()
        if vmax == vmin:
            continue
        boundary |= (vals == vmin) | (vals == vmax)
        order = np.argsort(vals, kind="stable")
        gaps = (vals[order[2:]] - vals[order[:-2]]) / (vmax - vmin)
        dist[order[1:-1]] += gaps
    dist[boundary] = np.inf
    return dist


def downsize_indices(front: np.ndarray, limit: int) -> np.ndarray:
    """Indices (original order) surviving crowding-based downsizing.

    While the front exceeds ``limit``, the point with the minimum crowding
    distance is dropped and distances are recomputed; ties at the minimum go
    to the earliest-inserted point.
    """
    if limit < 2:
        raise ValueError("downsize limit must be >= 2")
    front = np.asarray(front, dtype=np.float64)
    keep = list(range(front.shape[0]))
    while len(keep) > limit:
        d = crowding_distances(front[keep])
        del keep[int(np.argmin(d))]
    return np.asarray(keep, dtype=np.intp)


def downsize(front: np.ndarray, limit: int) -> np.ndarray:
    """Crowding-based downsizing of a front to at most ``limit`` points."""
    front = np.asarray(front, dtype=np.float64)
    if front.shape[0] <= limit:
        return front
    return front[downsize_indices(front, limit)]
