"""Co-location, interpolation, domain expansion, binning: the field operations."""

from __future__ import annotations

import warnings
from datetime import date, timezone
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .types import (
    BEAUFORT_EDGES,
    BEAUFORT_LABELS,
    SECTOR_LABELS,
    BBox,
    DateNotInGrid,
    EmptyInput,
    GeoPoint,
    Grid3D,
    Grid4D,
    LabelEdgeMismatch,
    MatchupRow,
    MatchupTable,
    ObsPoint,
    RecoveryReport,
    StillMissing,
    WindRoseTable,
)


class GridIndex(NamedTuple):
    it: int
    iz: int
    iy: int
    ix: int


def bounding_box(points: Sequence[ObsPoint]) -> BBox:
    """Spatiotemporal bounding box (per-axis extremes) of an observation set."""
    if not points:
        raise EmptyInput("bounding_box of no points")
    lats = [p.lat for p in points]
    lons = [p.lon for p in points]
    depths = [p.depth_m for p in points]
    times = [p.time for p in points]
    return BBox(
        lat_min=min(lats), lat_max=max(lats),
        lon_min=min(lons), lon_max=max(lons),
        time_start=min(times), time_end=max(times),
        depth_min_m=min(depths), depth_max_m=max(depths),
    )


def expand_bbox(b: BBox, pad_deg: float) -> BBox:
    """Grow the lat/lon extent by ``pad_deg`` per side, clamped, no wrap."""
    if pad_deg < 0:
        raise ValueError("pad_deg must be >= 0")
    return BBox(
        lat_min=max(-90.0, b.lat_min - pad_deg),
        lat_max=min(90.0, b.lat_max + pad_deg),
        lon_min=max(-180.0, b.lon_min - pad_deg),
        lon_max=min(180.0, b.lon_max + pad_deg),
        time_start=b.time_start, time_end=b.time_end,
        depth_min_m=b.depth_min_m, depth_max_m=b.depth_max_m,
    )


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance, spherical Earth with R = 6371 km."""
    return float(kernels.haversine_km(
        np.float64(a.lat), np.float64(a.lon), np.float64(b.lat), np.float64(b.lon)
    ))


def haversine_nearest(p: GeoPoint, candidates: Sequence[GeoPoint]) -> int:
    """Index of the great-circle-nearest candidate; ties go to the lowest index."""
    if not candidates:
        raise EmptyInput("no candidates")
    lats = np.array([c.lat for c in candidates], dtype=np.float64)
    lons = np.array([c.lon for c in candidates], dtype=np.float64)
    return int(kernels.haversine_nearest(p.lat, p.lon, lats, lons))


def _date_index(grid: Grid4D) -> dict[date, int]:
    # First occurrence wins, consistent with the tie-to-lower rule elsewhere.
    mapping: dict[date, int] = {}
    for i, t in enumerate(grid.times):
        mapping.setdefault(t.astimezone(timezone.utc).date(), i)
    return mapping


def nearest_grid_point(obs: ObsPoint, grid: Grid4D) -> GridIndex:
    """4D nearest co-location index.

    Time matches by exact day (observation normalized to 00:00 UTC); the
    spatial/depth axes take the nearest value by absolute difference with
    ties broken to the lower index.
    """
    by_date = _date_index(grid)
    key = obs.time.astimezone(timezone.utc).date()
    if key not in by_date:
        raise DateNotInGrid(f"{key.isoformat()} not on the grid time axis")
    it = by_date[key]
    iz = int(kernels.nearest_index(grid.depths_m, np.array([obs.depth_m]))[0])
    iy = int(kernels.nearest_index(grid.lats, np.array([obs.lat]))[0])
    ix = int(kernels.nearest_index(grid.lons, np.array([obs.lon]))[0])
    return GridIndex(it, iz, iy, ix)


def colocate_nearest(obs: Sequence[ObsPoint], grid: Grid4D) -> MatchupTable:
    """Nearest-grid-point matchup; rows go missing when the observation date
    is absent from the grid or the grid cell holds the missing sentinel."""
    if not obs:
        return MatchupTable(rows=())
    by_date = _date_index(grid)
    iz = kernels.nearest_index(grid.depths_m, np.array([o.depth_m for o in obs], dtype=np.float64))
    iy = kernels.nearest_index(grid.lats, np.array([o.lat for o in obs], dtype=np.float64))
    ix = kernels.nearest_index(grid.lons, np.array([o.lon for o in obs], dtype=np.float64))
    rows = []
    for k, o in enumerate(obs):
        it = by_date.get(o.time.astimezone(timezone.utc).date())
        if it is None:
            rows.append(MatchupRow(obs=o, model=float("nan")))
        else:
            rows.append(MatchupRow(obs=o, model=float(grid.values[it, iz[k], iy[k], ix[k]])))
    return MatchupTable(rows=tuple(rows))


def _ascending_view(grid: Grid4D) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Axes and values flipped so every interpolation axis ascends."""
    t = grid.time_epoch()
    z, y, x = grid.depths_m, grid.lats, grid.lons
    values = grid.values
    axes = [t, z, y, x]
    for axnum in range(4):
        a = axes[axnum]
        if a.size > 1 and a[1] < a[0]:
            axes[axnum] = a[::-1].copy()
            values = np.flip(values, axis=axnum)
    return axes[0], axes[1], axes[2], axes[3], np.ascontiguousarray(values)


def interp_4d(track: Sequence[ObsPoint], grid: Grid4D) -> np.ndarray:
    """Multilinear interpolation along a trajectory; NaN outside the hull or
    when a participating corner is missing."""
    if not track:
        return np.zeros(0, dtype=np.float64)
    t_axis, z_axis, y_axis, x_axis, values = _ascending_view(grid)
    qt = np.array([p.time.timestamp() for p in track], dtype=np.float64)
    qz = np.array([p.depth_m for p in track], dtype=np.float64)
    qy = np.array([p.lat for p in track], dtype=np.float64)
    qx = np.array([p.lon for p in track], dtype=np.float64)
    return kernels.interp4d(t_axis, z_axis, y_axis, x_axis, values, qt, qz, qy, qx)


def edge_recovery(
    track: Sequence[ObsPoint],
    grid_provider: Callable[[BBox], Grid4D],
    pad_deg: float = 0.3,
) -> tuple[np.ndarray, RecoveryReport]:
    """Interpolate a trajectory, expanding the retrieval domain once if any
    values come back missing (bounding-box edge effect recovery)."""
    if not track:
        raise EmptyInput("empty track")
    box = bounding_box(track)
    grid = grid_provider(box)
    values = interp_4d(track, grid)
    first_missing = int(np.isnan(values).sum())
    if first_missing == 0:
        return values, RecoveryReport(0, 0)
    expanded = expand_bbox(box, pad_deg)
    grid = grid_provider(expanded)
    values = interp_4d(track, grid)
    final_missing = int(np.isnan(values).sum())
    report = RecoveryReport(first_missing, final_missing)
    if final_missing > 0:
        raise StillMissing(report)
    return values, report


def time_mean(grid: Grid4D) -> Grid3D:
    """Per-cell mean over the time axis, skipping missing entries."""
    # all-NaN cells legitimately stay NaN; silence numpy's warning about them
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=RuntimeWarning)
        mean = np.nanmean(grid.values, axis=0)
    return Grid3D(
        depths_m=grid.depths_m, lats=grid.lats, lons=grid.lons, values=mean, units=grid.units
    )


def wind_rose(
    dirs_deg: Sequence[float],
    speeds: Sequence[float],
    edges: Sequence[float] = BEAUFORT_EDGES,
    labels: Sequence[str] = BEAUFORT_LABELS,
) -> WindRoseTable:
    """16-sector x speed-category frequency table.

    Enforces the one-fewer rule up front: N edges define N-1 bins, so label
    count must be exactly ``len(edges) - 1``.
    """
    edges_arr = np.asarray(edges, dtype=np.float64)
    if len(labels) != len(edges_arr) - 1:
        raise LabelEdgeMismatch(n_labels=len(labels), n_edges=len(edges_arr))
    if edges_arr.size < 2 or edges_arr[0] != 0.0:
        raise ValueError("edges must start at 0")
    if np.any(np.diff(edges_arr) <= 0):
        raise ValueError("edges must be strictly increasing")
    if len(dirs_deg) != len(speeds):
        raise ValueError("dirs and speeds must have equal length")
    counts, excluded = kernels.windrose_count(
        np.asarray(dirs_deg, dtype=np.float64),
        np.asarray(speeds, dtype=np.float64),
        edges_arr,
        len(labels),
    )
    return WindRoseTable(
        sectors=SECTOR_LABELS, categories=tuple(labels), counts=counts, excluded=excluded
    )
