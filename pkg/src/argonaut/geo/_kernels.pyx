# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; behavioral twin of ``_kernels_py``.

Same contracts as the fallback: ascending axes for interpolation,
tie-to-lower nearest lookups, NaN as the missing sentinel with zero-weight
corners excluded from participation.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport NAN, asin, cos, fabs, floor, fmod, isfinite, isnan, sin, sqrt

cnp.import_array()

IMPLEMENTATION = "compiled"
EARTH_RADIUS_KM = 6371.0

cdef double R_EARTH = 6371.0
cdef double PI = 3.141592653589793


def nearest_index(axis, queries):
    """Per-query index of the nearest axis value (ties to the lower index)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(axis, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q = np.ascontiguousarray(
        np.atleast_1d(np.asarray(queries, dtype=np.float64)))
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(q.shape[0], dtype=np.int64)
    cdef Py_ssize_t i, j, best, n = a.shape[0]
    cdef double d, bestd
    for i in range(q.shape[0]):
        best = 0
        bestd = fabs(a[0] - q[i])
        for j in range(1, n):
            d = fabs(a[j] - q[i])
            if d < bestd:
                bestd = d
                best = j
        out[i] = best
    return out


cdef inline Py_ssize_t _lower_bracket(const double* a, Py_ssize_t n, double q) nogil:
    # largest j in [0, n-2] with a[j] <= q (callers guarantee q within hull)
    cdef Py_ssize_t lo = 0, hi = n - 1, mid
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if a[mid] <= q:
            lo = mid
        else:
            hi = mid
    return lo


def interp4d(t_axis, z_axis, y_axis, x_axis, values, qt, qz, qy, qx):
    """Multilinear interpolation on a rectilinear 4-D grid (NaN = missing)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ta = np.ascontiguousarray(t_axis, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] za = np.ascontiguousarray(z_axis, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ya = np.ascontiguousarray(y_axis, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xa = np.ascontiguousarray(x_axis, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=4] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q0 = np.ascontiguousarray(qt, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q1 = np.ascontiguousarray(qz, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q2 = np.ascontiguousarray(qy, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q3 = np.ascontiguousarray(qx, dtype=np.float64)

    cdef Py_ssize_t m = q0.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)

    cdef Py_ssize_t n0 = ta.shape[0], n1 = za.shape[0], n2 = ya.shape[0], n3 = xa.shape[0]
    cdef Py_ssize_t i, corner, o0, o1, o2, o3, i0, i1, i2, i3
    cdef Py_ssize_t j0, j1, j2, j3
    cdef double f0, f1, f2, f3, w, acc, v, qv
    cdef bint outside, bad
    cdef const double* paxis
    cdef const double* pv = &vals[0, 0, 0, 0]
    cdef Py_ssize_t s0 = n1 * n2 * n3, s1 = n2 * n3, s2 = n3

    for i in range(m):
        outside = False
        # per-axis brackets and fractions
        qv = q0[i]
        if n0 == 1:
            j0 = 0; f0 = 0.0
            if qv != ta[0]:
                outside = True
        else:
            if qv < ta[0] or qv > ta[n0 - 1]:
                outside = True; j0 = 0; f0 = 0.0
            else:
                j0 = _lower_bracket(&ta[0], n0, qv)
                f0 = (qv - ta[j0]) / (ta[j0 + 1] - ta[j0])
        qv = q1[i]
        if n1 == 1:
            j1 = 0; f1 = 0.0
            if qv != za[0]:
                outside = True
        else:
            if qv < za[0] or qv > za[n1 - 1]:
                outside = True; j1 = 0; f1 = 0.0
            else:
                j1 = _lower_bracket(&za[0], n1, qv)
                f1 = (qv - za[j1]) / (za[j1 + 1] - za[j1])
        qv = q2[i]
        if n2 == 1:
            j2 = 0; f2 = 0.0
            if qv != ya[0]:
                outside = True
        else:
            if qv < ya[0] or qv > ya[n2 - 1]:
                outside = True; j2 = 0; f2 = 0.0
            else:
                j2 = _lower_bracket(&ya[0], n2, qv)
                f2 = (qv - ya[j2]) / (ya[j2 + 1] - ya[j2])
        qv = q3[i]
        if n3 == 1:
            j3 = 0; f3 = 0.0
            if qv != xa[0]:
                outside = True
        else:
            if qv < xa[0] or qv > xa[n3 - 1]:
                outside = True; j3 = 0; f3 = 0.0
            else:
                j3 = _lower_bracket(&xa[0], n3, qv)
                f3 = (qv - xa[j3]) / (xa[j3 + 1] - xa[j3])

        if outside:
            out[i] = NAN
            continue

        acc = 0.0
        bad = False
        for corner in range(16):
            o0 = (corner >> 3) & 1
            o1 = (corner >> 2) & 1
            o2 = (corner >> 1) & 1
            o3 = corner & 1
            w = (f0 if o0 else 1.0 - f0) * (f1 if o1 else 1.0 - f1) \
                * (f2 if o2 else 1.0 - f2) * (f3 if o3 else 1.0 - f3)
            if w <= 0.0:
                continue
            i0 = j0 + o0
            if i0 > n0 - 1: i0 = n0 - 1
            i1 = j1 + o1
            if i1 > n1 - 1: i1 = n1 - 1
            i2 = j2 + o2
            if i2 > n2 - 1: i2 = n2 - 1
            i3 = j3 + o3
            if i3 > n3 - 1: i3 = n3 - 1
            v = pv[i0 * s0 + i1 * s1 + i2 * s2 + i3]
            if isnan(v):
                bad = True
                break
            acc += w * v
        out[i] = NAN if bad else acc
    return out


cdef inline double _haversine(double lat1, double lon1, double lat2, double lon2) nogil:
    cdef double phi1 = lat1 * PI / 180.0
    cdef double phi2 = lat2 * PI / 180.0
    cdef double dphi = phi2 - phi1
    cdef double dlam = (lon2 - lon1) * PI / 180.0
    cdef double s1 = sin(dphi / 2.0)
    cdef double s2 = sin(dlam / 2.0)
    cdef double a = s1 * s1 + cos(phi1) * cos(phi2) * s2 * s2
    cdef double root = sqrt(a)
    if root > 1.0:
        root = 1.0
    return 2.0 * R_EARTH * asin(root)


def haversine_km(lat1, lon1, lat2, lon2):
    """Great-circle distance in km; broadcasts like the numpy fallback."""
    arr1 = np.broadcast_arrays(
        np.asarray(lat1, dtype=np.float64), np.asarray(lon1, dtype=np.float64),
        np.asarray(lat2, dtype=np.float64), np.asarray(lon2, dtype=np.float64))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(arr1[0]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.ascontiguousarray(arr1[1]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c = np.ascontiguousarray(arr1[2]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(arr1[3]).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(a.shape[0], dtype=np.float64)
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        out[i] = _haversine(a[i], b[i], c[i], d[i])
    if np.asarray(lat1).ndim == 0 and np.asarray(lat2).ndim == 0:
        return float(out[0])
    return out.reshape(arr1[0].shape)


def haversine_nearest(lat, lon, cand_lats, cand_lons):
    """Index of the candidate nearest by great-circle distance (ties lowest)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cl = np.ascontiguousarray(cand_lats, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cn = np.ascontiguousarray(cand_lons, dtype=np.float64)
    cdef double qlat = lat, qlon = lon, d, bestd
    cdef Py_ssize_t i, best = 0
    bestd = _haversine(qlat, qlon, cl[0], cn[0])
    for i in range(1, cl.shape[0]):
        d = _haversine(qlat, qlon, cl[i], cn[i])
        if d < bestd:
            bestd = d
            best = i
    return best


def windrose_count(dirs_deg, speeds, edges, int n_categories):
    """16-sector x speed-category counts plus the excluded-row count."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(dirs_deg, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s = np.ascontiguousarray(speeds, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.ascontiguousarray(edges, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] counts = np.zeros((16, n_categories), dtype=np.int64)
    cdef Py_ssize_t i, sec, cat, k
    cdef Py_ssize_t excluded = 0
    cdef double w
    for i in range(d.shape[0]):
        if not (isfinite(d[i]) and isfinite(s[i])) or s[i] < e[0]:
            excluded += 1
            continue
        w = fmod(d[i] + 11.25, 360.0)
        if w < 0:
            w += 360.0
        sec = <Py_ssize_t>floor(w / 22.5)
        if sec > 15: sec = 15
        if sec < 0: sec = 0
        cat = n_categories - 1  # open-ended last bin
        for k in range(e.shape[0] - 1):
            if e[k] <= s[i] < e[k + 1]:
                cat = k
                break
        counts[sec, cat] += 1
    return counts, excluded
