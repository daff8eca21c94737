"""Pure-numpy hypervolume kernels.

Fallback backend used when the compiled extension is unavailable (or when
``MOQD_KERNELS=python`` is set). Same contract as ``_hv_cy``: maximization
fronts, exact hypervolume for 2 and 3 objectives, reference point weakly
dominated by every point.
"""

from __future__ import annotations

import numpy as np

__all__ = ["dominates", "hypervolume", "hvi"]


def dominates(a, b) -> bool:
    """True iff ``a`` strictly dominates ``b`` (componentwise >=, one strict >)."""
    av = np.ascontiguousarray(a, dtype=np.float64)
    bv = np.ascontiguousarray(b, dtype=np.float64)
    if av.ndim != 1 or bv.ndim != 1 or av.shape[0] != bv.shape[0]:
        raise ValueError("objective vectors must be 1-D with equal length")
    return bool(np.all(av >= bv) and np.any(av > bv))


def _prep(points, ref):
    pts = np.ascontiguousarray(points, dtype=np.float64)
    r = np.ascontiguousarray(ref, dtype=np.float64)
    if r.ndim != 1:
        raise ValueError("reference point must be a 1-D vector")
    k = r.shape[0]
    if k not in (2, 3):
        raise ValueError(f"only 2- or 3-objective fronts are supported, got k={k}")
    if pts.size == 0:
        return pts.reshape(0, k), r, k
    if pts.ndim != 2 or pts.shape[1] != k:
        raise ValueError(
            f"front must have shape (n, {k}), got {pts.shape}"
        )
    if not np.isfinite(pts).all():
        raise ValueError("front contains non-finite objective values")
    if (pts < r).any():
        raise ValueError("front contains a point below the reference point")
    return pts, r, k


def _hv2d(pts: np.ndarray) -> float:
    # pts already shifted so the reference is the origin; robust to
    # dominated/duplicate members (covered strips add nothing).
    order = np.argsort(-pts[:, 0], kind="stable")
    x = pts[order, 0]
    y = pts[order, 1]
    prev = np.concatenate(([0.0], np.maximum.accumulate(y)[:-1]))
    return float(np.sum(x * np.maximum(y - prev, 0.0)))


def _hv3d(pts: np.ndarray) -> float:
    # Sweep the third objective downward, accumulating slab volumes whose
    # cross-section is the 2-D hypervolume of all projections seen so far.
    order = np.argsort(-pts[:, 2], kind="stable")
    z = pts[order, 2]
    proj = pts[order, :2]
    hv = 0.0
    i = 0
    n = len(z)
    while i < n:
        j = i + 1
        while j < n and z[j] == z[i]:
            j += 1
        z_next = z[j] if j < n else 0.0
        if z[i] > z_next:
            hv += _hv2d(proj[:j]) * (z[i] - z_next)
        i = j
    return hv


def hypervolume(points, ref) -> float:
    """Exact hypervolume of a maximization front w.r.t. ``ref`` (k in {2, 3})."""
    pts, r, k = _prep(points, ref)
    if pts.shape[0] == 0:
        return 0.0
    shifted = pts - r
    return _hv2d(shifted) if k == 2 else _hv3d(shifted)


def hvi(point, points, ref) -> float:
    """Hypervolume gained by adding ``point`` to the front; always >= 0."""
    pts, r, k = _prep(points, ref)
    p = np.ascontiguousarray(point, dtype=np.float64)
    if p.ndim != 1 or p.shape[0] != k:
        raise ValueError(f"point must be a vector of length {k}")
    if not np.isfinite(p).all():
        raise ValueError("point contains non-finite objective values")
    if (p < r).any():
        raise ValueError("point lies below the reference point")
    if pts.shape[0] == 0:
        return float(np.prod(p - r))
    if np.any(np.all(pts >= p, axis=1)):
        return 0.0  # weakly dominated, adds nothing
    shifted = pts - r
    union = np.vstack([shifted, p - r])
    f = _hv2d if k == 2 else _hv3d
    return max(f(union) - f(shifted), 0.0)
