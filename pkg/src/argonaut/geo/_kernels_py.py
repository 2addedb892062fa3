"""Pure-numpy implementations of the hot kernels.

Mirrors the compiled extension in ``_kernels.pyx``; selected at import time
by :mod:`argonaut.geo.kernels` when the extension is unavailable (or forced
via ``ARGONAUT_PURE_PYTHON=1``).

Conventions shared by both implementations:
  - interpolation axes are strictly ascending float64 arrays;
  - ``nearest_index`` accepts any orientation and breaks ties to the lower
    index;
  - missing values are NaN; a zero-weight interpolation corner does not
    participate, so NaN cells only poison queries that actually touch them.
"""

from __future__ import annotations

import numpy as np

EARTH_RADIUS_KM = 6371.0

IMPLEMENTATION = "python"


def nearest_index(axis: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Per-query index of the nearest axis value (ties to the lower index)."""
    axis = np.asarray(axis, dtype=np.float64)
    queries = np.atleast_1d(np.asarray(queries, dtype=np.float64))
    out = np.empty(queries.size, dtype=np.int64)
    # Chunked full scan: orientation-free and first-minimum (= lowest index).
    chunk = max(1, 2_000_000 // max(axis.size, 1))
    for start in range(0, queries.size, chunk):
        q = queries[start : start + chunk]
        dist = np.abs(axis[None, :] - q[:, None])
        out[start : start + q.size] = np.argmin(dist, axis=1)
    return out


def _bracket(axis: np.ndarray, q: np.ndarray):
    """Lower bracket index and fractional position for an ascending axis.

    Returns (j, frac, outside). Singleton axes bracket to (0, 0) and count as
    outside unless the query equals the single value.
    """
    n = axis.size
    if n == 1:
        j = np.zeros(q.size, dtype=np.int64)
        frac = np.zeros(q.size, dtype=np.float64)
        outside = q != axis[0]
        return j, frac, outside
    outside = (q < axis[0]) | (q > axis[-1])
    j = np.clip(np.searchsorted(axis, q, side="right") - 1, 0, n - 2).astype(np.int64)
    frac = (q - axis[j]) / (axis[j + 1] - axis[j])
    frac[outside] = 0.0
    return j, frac, outside


def interp4d(
    t_axis: np.ndarray,
    z_axis: np.ndarray,
    y_axis: np.ndarray,
    x_axis: np.ndarray,
    values: np.ndarray,
    qt: np.ndarray,
    qz: np.ndarray,
    qy: np.ndarray,
    qx: np.ndarray,
) -> np.ndarray:
    """Multilinear interpolation on a rectilinear 4-D grid.

    Queries outside the axis hull, or touching a NaN corner with non-zero
    weight, yield NaN.
    """
    axes = [np.asarray(a, dtype=np.float64) for a in (t_axis, z_axis, y_axis, x_axis)]
    queries = [np.asarray(q, dtype=np.float64) for q in (qt, qz, qy, qx)]
    m = queries[0].size

    brackets = [_bracket(a, q) for a, q in zip(axes, queries)]
    outside = np.zeros(m, dtype=bool)
    for _, _, out_axis in brackets:
        outside |= out_axis

    result = np.zeros(m, dtype=np.float64)
    bad = np.zeros(m, dtype=bool)
    for corner in range(16):
        weight = np.ones(m, dtype=np.float64)
        idx = []
        for axnum in range(4):
            offset = (corner >> (3 - axnum)) & 1
            j, frac, _ = brackets[axnum]
            weight = weight * (frac if offset else (1.0 - frac))
            # clamp keeps singleton axes in range; the weight there is 0
            idx.append(np.minimum(j + offset, axes[axnum].size - 1))
        vals = values[idx[0], idx[1], idx[2], idx[3]]
        active = weight > 0.0
        bad |= active & np.isnan(vals)
        result += np.where(active, weight * np.where(np.isnan(vals), 0.0, vals), 0.0)

    result[outside | bad] = np.nan
    return result


def haversine_km(
    lat1: np.ndarray, lon1: np.ndarray, lat2: np.ndarray, lon2: np.ndarray
) -> np.ndarray:
    """Great-circle distance in km (spherical Earth, R=6371)."""
    phi1, phi2 = np.radians(lat1), np.radians(lat2)
    dphi = phi2 - phi1
    dlam = np.radians(lon2) - np.radians(lon1)
    a = np.sin(dphi / 2.0) ** 2 + np.cos(phi1) * np.cos(phi2) * np.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * np.arcsin(np.minimum(1.0, np.sqrt(a)))


def haversine_nearest(lat: float, lon: float, cand_lats: np.ndarray, cand_lons: np.ndarray) -> int:
    """Index of the candidate nearest by great-circle distance (ties lowest)."""
    dists = haversine_km(
        np.float64(lat), np.float64(lon),
        np.asarray(cand_lats, dtype=np.float64), np.asarray(cand_lons, dtype=np.float64),
    )
    return int(np.argmin(dists))


def windrose_count(
    dirs_deg: np.ndarray, speeds: np.ndarray, edges: np.ndarray, n_categories: int
) -> tuple[np.ndarray, int]:
    """16-sector x speed-category counts plus the excluded-row count.

    Sectors are 22.5 deg wide and centered on the compass points (0 deg is
    mid-sector N). Speed bins are half-open [lo, hi) with an open-ended last
    bin; rows with non-finite direction/speed, or speed below the first edge,
    are excluded.
    """
    dirs_deg = np.asarray(dirs_deg, dtype=np.float64)
    speeds = np.asarray(speeds, dtype=np.float64)
    edges = np.asarray(edges, dtype=np.float64)

    valid = np.isfinite(dirs_deg) & np.isfinite(speeds) & (speeds >= edges[0])
    excluded = int((~valid).sum())
    d = dirs_deg[valid]
    s = speeds[valid]

    sector = (np.floor(((d + 11.25) % 360.0) / 22.5)).astype(np.int64)
    sector = np.clip(sector, 0, 15)
    category = np.searchsorted(edges, s, side="right") - 1
    category = np.clip(category, 0, n_categories - 1).astype(np.int64)

    counts = np.zeros((16, n_categories), dtype=np.int64)
    np.add.at(counts, (sector, category), 1)
    return counts, excluded
