# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled exact-hypervolume kernels for 2- and 3-objective maximization fronts.

Same contract as the pure-numpy backend in ``_hv_py``; the active backend is
selected at import time by ``moqd._kernels``.
"""

from libc.math cimport isfinite
from libc.stdlib cimport free, malloc

import numpy as np

__all__ = ["dominates", "hypervolume", "hvi"]

# Insertion sort below this size, numpy argsort above.
cdef Py_ssize_t SORT_CUTOFF = 128


cdef void _sort_desc_small(double* key, Py_ssize_t* idx, Py_ssize_t n):
    cdef Py_ssize_t i, j, t
    for i in range(1, n):
        t = idx[i]
        j = i - 1
        while j >= 0 and key[idx[j]] < key[t]:
            idx[j + 1] = idx[j]
            j -= 1
        idx[j + 1] = t


cdef int _order_desc(double* key, Py_ssize_t* idx, Py_ssize_t n) except -1:
    cdef Py_ssize_t i
    cdef Py_ssize_t[::1] ov
    for i in range(n):
        idx[i] = i
    if n <= SORT_CUTOFF:
        _sort_desc_small(key, idx, n)
        return 0
    ov = np.argsort(-np.asarray(<double[:n]> key), kind="stable")
    for i in range(n):
        idx[i] = ov[i]
    return 0


cdef double _hv2d(double* x, double* y, Py_ssize_t* order, Py_ssize_t n,
                  Py_ssize_t skip):
    # order sorts x descending; robust to dominated/duplicate members.
    cdef double hv = 0.0, ymax = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        j = order[i]
        if j == skip:
            continue
        if y[j] > ymax:
            hv += x[j] * (y[j] - ymax)
            ymax = y[j]
    return hv


cdef Py_ssize_t _front_insert(double* gx, double* gy, Py_ssize_t m,
                              double x, double y):
    # 2-D front kept sorted by gx descending / gy ascending (mutually
    # non-dominated). Returns the new front size.
    cdef Py_ssize_t p = 0, r = 0, s = 0, j
    while p < m and gx[p] >= x:
        p += 1
    if p > 0 and gy[p - 1] >= y:
        return m  # weakly dominated, nothing to add
    while r < m and gy[r] <= y:
        r += 1
    s = p  # first index with gx < x; members in [s, r) are dominated by (x, y)
    if s < r:
        for j in range(r, m):
            gx[s + 1 + j - r] = gx[j]
            gy[s + 1 + j - r] = gy[j]
        gx[s] = x
        gy[s] = y
        return m - (r - s) + 1
    for j in range(m - 1, s - 1, -1):
        gx[j + 1] = gx[j]
        gy[j + 1] = gy[j]
    gx[s] = x
    gy[s] = y
    return m + 1


cdef double _hv3d(double* x, double* y, double* z, Py_ssize_t* order,
                  Py_ssize_t n, Py_ssize_t skip, double* gx, double* gy):
    # Sweep the third objective downward; the slab between consecutive
    # levels has the 2-D hypervolume of the accumulated projections.
    cdef Py_ssize_t m = 0, i = 0, j
    cdef double hv = 0.0, zcur, znext, area, prev_y
    while i < n:
        if order[i] == skip:
            i += 1
            continue
        zcur = z[order[i]]
        while i < n and (order[i] == skip or z[order[i]] == zcur):
            if order[i] != skip:
                m = _front_insert(gx, gy, m, x[order[i]], y[order[i]])
            i += 1
        znext = 0.0
        for j in range(i, n):
            if order[j] != skip:
                znext = z[order[j]]
                break
        area = 0.0
        prev_y = 0.0
        for j in range(m):
            area += gx[j] * (gy[j] - prev_y)
            prev_y = gy[j]
        hv += area * (zcur - znext)
    return hv


def dominates(a, b):
    """True iff ``a`` strictly dominates ``b`` (componentwise >=, one strict >)."""
    a_arr = np.ascontiguousarray(a, dtype=np.float64)
    b_arr = np.ascontiguousarray(b, dtype=np.float64)
    if a_arr.ndim != 1 or b_arr.ndim != 1 or a_arr.shape[0] != b_arr.shape[0]:
        raise ValueError("objective vectors must be 1-D with equal length")
    cdef double[::1] av = a_arr
    cdef double[::1] bv = b_arr
    cdef Py_ssize_t i, k = av.shape[0]
    cdef bint strict = False
    for i in range(k):
        if av[i] < bv[i]:
            return False
        if av[i] > bv[i]:
            strict = True
    return bool(strict)


cdef tuple _prep(points, ref):
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
        raise ValueError(f"front must have shape (n, {k}), got {pts.shape}")
    return pts, r, k


cdef double _hv_shifted(double[:, ::1] P, double[::1] R, Py_ssize_t n,
                        Py_ssize_t k, double* extra) except? -1.0:
    # Validates, shifts by the reference, and computes hypervolume. ``extra``
    # is an optional point appended after the front (for HVI), or NULL.
    cdef Py_ssize_t total = n + (1 if extra != NULL else 0)
    cdef double* buf = <double*> malloc((3 * total + 2 * total) * sizeof(double))
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc(total * sizeof(Py_ssize_t))
    if buf == NULL or idx == NULL:
        free(buf)
        free(idx)
        raise MemoryError()
    cdef double* cx = buf
    cdef double* cy = buf + total
    cdef double* cz = buf + 2 * total
    cdef double* gx = buf + 3 * total
    cdef double* gy = buf + 4 * total
    cdef Py_ssize_t i, j
    cdef double v
    cdef double hv_all, hv_base
    try:
        for i in range(n):
            for j in range(k):
                v = P[i, j]
                if not isfinite(v):
                    raise ValueError("front contains non-finite objective values")
                if v < R[j]:
                    raise ValueError("front contains a point below the reference point")
                if j == 0:
                    cx[i] = v - R[0]
                elif j == 1:
                    cy[i] = v - R[1]
                else:
                    cz[i] = v - R[2]
        if extra != NULL:
            cx[n] = extra[0] - R[0]
            cy[n] = extra[1] - R[1]
            if k == 3:
                cz[n] = extra[2] - R[2]
        if k == 2:
            _order_desc(cx, idx, total)
            if extra != NULL:
                hv_all = _hv2d(cx, cy, idx, total, -1)
                hv_base = _hv2d(cx, cy, idx, total, n)
                return hv_all - hv_base
            return _hv2d(cx, cy, idx, total, -1)
        _order_desc(cz, idx, total)
        if extra != NULL:
            hv_all = _hv3d(cx, cy, cz, idx, total, -1, gx, gy)
            hv_base = _hv3d(cx, cy, cz, idx, total, n, gx, gy)
            return hv_all - hv_base
        return _hv3d(cx, cy, cz, idx, total, -1, gx, gy)
    finally:
        free(buf)
        free(idx)


def hypervolume(points, ref):
    """Exact hypervolume of a maximization front w.r.t. ``ref`` (k in {2, 3})."""
    pts, r, k = _prep(points, ref)
    cdef Py_ssize_t n = pts.shape[0]
    if n == 0:
        return 0.0
    cdef double[:, ::1] P = pts
    cdef double[::1] R = r
    return _hv_shifted(P, R, n, k, NULL)


def hvi(point, points, ref):
    """Hypervolume gained by adding ``point`` to the front; always >= 0."""
    pts, r, k = _prep(points, ref)
    p = np.ascontiguousarray(point, dtype=np.float64)
    if p.ndim != 1 or p.shape[0] != k:
        raise ValueError(f"point must be a vector of length {k}")
    cdef double[::1] pv = p
    cdef double[::1] R = r
    cdef double[:, ::1] P = pts
    cdef Py_ssize_t i, j, n = pts.shape[0]
    cdef double v
    cdef bint weak
    for j in range(k):
        v = pv[j]
        if not isfinite(v):
            raise ValueError("point contains non-finite objective values")
        if v < R[j]:
            raise ValueError("point lies below the reference point")
    if n == 0:
        v = 1.0
        for j in range(k):
            v *= pv[j] - R[j]
        return v
    for i in range(n):
        weak = True
        for j in range(k):
            if P[i, j] < pv[j]:
                weak = False
                break
        if weak:
            return 0.0  # weakly dominated, adds nothing
    v = _hv_shifted(P, R, n, k, &pv[0])
    return v if v > 0.0 else 0.0
