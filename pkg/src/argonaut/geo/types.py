"""Domain types for the geo-numerics kernel.

Missing values are IEEE quiet-NaN in memory and the literal token "NA" in
text serializations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

EARTH_RADIUS_KM = 6371.0

SECTOR_LABELS = (
    "N", "NNE", "NE", "ENE", "E", "ESE", "SE", "SSE",
    "S", "SSW", "SW", "WSW", "W", "WNW", "NW", "NNW",
)

# Standard Beaufort-scale speed edges (m/s); the interior values are
# configuration defaults, callers may pass their own edges/labels.
BEAUFORT_EDGES = (0.0, 0.5, 1.6, 3.4, 5.5, 8.0, 10.8, 13.9, 17.2, 20.8, 24.5, 28.5, math.inf)
BEAUFORT_LABELS = (
    "Calm (0)", "Light air (1)", "Light breeze (2)", "Gentle breeze (3)",
    "Moderate breeze (4)", "Fresh breeze (5)", "Strong breeze (6)",
    "Near gale (7)", "Gale (8)", "Strong gale (9)", "Storm (10)",
    "Violent storm (11)",
)


class GeoNumericsError(Exception):
    pass


class EmptyInput(GeoNumericsError):
    pass


class DateNotInGrid(GeoNumericsError):
    pass


class StillMissing(GeoNumericsError):
    """Edge recovery left unresolved missing values; carries the report."""

    def __init__(self, report: "RecoveryReport"):
        super().__init__(
            f"{report.final_missing_count} values still missing after domain expansion"
        )
        self.report = report


class NoValidRows(GeoNumericsError):
    pass


class AllZero(GeoNumericsError):
    pass


class DegenerateInput(GeoNumericsError):
    pass


class NegativeInput(GeoNumericsError):
    pass


class LabelEdgeMismatch(GeoNumericsError):
    def __init__(self, n_labels: int, n_edges: int):
        super().__init__(
            f"got {n_labels} labels for {n_edges} edges; "
            f"bin labels must be one fewer than the number of bin edges"
        )
        self.n_labels = n_labels
        self.n_edges = n_edges


def _ensure_utc(dt: datetime) -> datetime:
    if dt.tzinfo is None:
        return dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} out of [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude {self.lon} out of [-180, 180]")


@dataclass(frozen=True)
class ObsPoint:
    time: datetime
    lat: float
    lon: float
    depth_m: float
    value: float  # NaN means explicitly missing

    def __post_init__(self) -> None:
        object.__setattr__(self, "time", _ensure_utc(self.time))
        if self.depth_m < 0:
            raise ValueError("depth must be non-negative")
        GeoPoint(self.lat, self.lon)  # bounds check


@dataclass(frozen=True)
class BBox:
    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float
    time_start: datetime
    time_end: datetime
    depth_min_m: float
    depth_max_m: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "time_start", _ensure_utc(self.time_start))
        object.__setattr__(self, "time_end", _ensure_utc(self.time_end))
        if self.lat_min > self.lat_max or self.lon_min > self.lon_max:
            raise ValueError("bbox min exceeds max on a spatial axis")
        if self.time_start > self.time_end or self.depth_min_m > self.depth_max_m:
            raise ValueError("bbox min exceeds max on time/depth")

    def contains_box(self, other: "BBox") -> bool:
        return (
            self.lat_min <= other.lat_min and self.lat_max >= other.lat_max
            and self.lon_min <= other.lon_min and self.lon_max >= other.lon_max
        )


def _check_axis(name: str, axis: np.ndarray) -> None:
    if axis.ndim != 1 or axis.size == 0:
        raise ValueError(f"{name} axis must be a non-empty 1-D array")
    if not np.all(np.isfinite(axis)):
        raise ValueError(f"{name} axis contains non-finite values")
    if axis.size > 1:
        diffs = np.diff(axis)
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ValueError(f"{name} axis must be strictly monotone")


class Grid4D:
    """Rectilinear time x depth x lat x lon field, immutable after construction."""

    def __init__(
        self,
        times: Sequence[datetime],
        depths_m: Sequence[float],
        lats: Sequence[float],
        lons: Sequence[float],
        values: np.ndarray,
        units: str = "",
    ):
        self.times = tuple(_ensure_utc(t) for t in times)
        if len(self.times) == 0:
            raise ValueError("times axis must be non-empty")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")
        self.depths_m = np.asarray(depths_m, dtype=np.float64)
        self.lats = np.asarray(lats, dtype=np.float64)
        self.lons = np.asarray(lons, dtype=np.float64)
        _check_axis("depth", self.depths_m)
        _check_axis("lat", self.lats)
        _check_axis("lon", self.lons)
        self.values = np.asarray(values, dtype=np.float64)
        expected = (len(self.times), self.depths_m.size, self.lats.size, self.lons.size)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != axes {expected}")
        self.units = units
        for arr in (self.depths_m, self.lats, self.lons, self.values):
            arr.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.values.shape  # type: ignore[return-value]

    def time_epoch(self) -> np.ndarray:
        return np.array([t.timestamp() for t in self.times], dtype=np.float64)


@dataclass(frozen=True)
class Grid3D:
    """depth x lat x lon field, the result of collapsing the time axis."""

    depths_m: np.ndarray
    lats: np.ndarray
    lons: np.ndarray
    values: np.ndarray
    units: str = ""


@dataclass(frozen=True)
class MatchupRow:
    obs: ObsPoint
    model: float  # NaN when no model value could be located

    @property
    def valid(self) -> bool:
        return not math.isnan(self.model)


@dataclass(frozen=True)
class MatchupTable:
    rows: tuple[MatchupRow, ...]

    @property
    def valid_fraction(self) -> float:
        if not self.rows:
            return 0.0
        return sum(1 for r in self.rows if r.valid) / len(self.rows)


@dataclass(frozen=True)
class ValidationStats:
    n: int
    bias: float
    rmse: float
    pearson_r: float | None  # None when either side has zero variance

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.rmse + 1e-9 < abs(self.bias):
            raise ValueError("rmse < |bias| is impossible")
        if self.pearson_r is not None and not -1.0 - 1e-9 <= self.pearson_r <= 1.0 + 1e-9:
            raise ValueError("pearson r out of [-1, 1]")


@dataclass(frozen=True)
class DepthBinStats:
    lo_m: float
    hi_m: float
    n: int
    stats: ValidationStats | None  # None for empty bins (n=0)


@dataclass(frozen=True)
class InferentialStats:
    spearman_rho: float
    spearman_p: float
    mann_whitney_u: float
    mann_whitney_p: float
    welch_t: float
    welch_p: float
    ols_slope: float
    ols_intercept: float


@dataclass(frozen=True)
class RecoveryReport:
    first_missing_count: int
    final_missing_count: int


@dataclass(frozen=True)
class WindRoseTable:
    sectors: tuple[str, ...]
    categories: tuple[str, ...]
    counts: np.ndarray  # 16 x len(categories), non-negative ints
    excluded: int = 0

    def __post_init__(self) -> None:
        if self.counts.shape != (len(self.sectors), len(self.categories)):
            raise ValueError("counts shape does not match sector/category labels")
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return int(self.counts.sum())
