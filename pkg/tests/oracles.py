"""Independent oracles used to cross-check the exact implementations."""

from __future__ import annotations

import numpy as np


def mc_hypervolume(points, ref, n_samples, rng):
    """Monte-Carlo hypervolume estimate with its standard error.

    Uniform rejection sampling over the bounding box [ref, max(points)]:
    a sample counts when some front point dominates it componentwise.
    Completely independent of the sweep-based exact computation.
    """
    points = np.asarray(points, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if points.shape[0] == 0:
        return 0.0, 0.0
    hi = points.max(axis=0)
    vol = float(np.prod(hi - ref))
    if vol == 0.0:
        return 0.0, 0.0
    u = rng.uniform(ref, hi, size=(n_samples, ref.shape[0]))
    covered = np.zeros(n_samples, dtype=bool)
    for p in points:
        covered |= np.all(u <= p, axis=1)
    frac = covered.mean()
    stderr = vol * np.sqrt(frac * (1.0 - frac) / n_samples)
    return vol * frac, stderr


def weakly_dominated_scan(p, front):
    """Direct dominance scan: is ``p`` weakly dominated by any front member?"""
    front = np.asarray(front, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    return any(np.all(q >= p) for q in front)


def random_front(rng, k, max_points=20, low=0.01, high=99.99):
    """A random mutually non-dominated front built by filtered insertion."""
    raw = rng.uniform(low, high, size=(max_points, k))
    front: list[np.ndarray] = []
    for p in raw:
        if any(np.all(q >= p) for q in front):
            continue
        front = [q for q in front if not np.all(p >= q)] + [p]
    return np.asarray(front)
