"""Dataset metadata records, feature-flag introspection, corpus fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

GIB = 2**30
DEFAULT_SIZE_THRESHOLD = GIB

TEXT_FIELDS = ("title", "abstract", "parameters", "campaign", "platform")


class CatalogError(Exception):
    pass


class DuplicateId(CatalogError):
    pass


class CorpusParseError(CatalogError):
    """Raised by the fixture loader; carries the offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno


@dataclass(frozen=True)
class Parameter:
    name: str
    unit: str = ""


@dataclass(frozen=True)
class GeoExtent:
    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat_min <= self.lat_max <= 90.0:
            raise ValueError(f"bad latitude range [{self.lat_min}, {self.lat_max}]")
        if not -180.0 <= self.lon_min <= 180.0 or not -180.0 <= self.lon_max <= 180.0:
            raise ValueError(f"longitude out of [-180, 180]")
        if self.lon_min > self.lon_max:
            raise ValueError("lon_min > lon_max (boxes do not wrap; split at the antimeridian)")

    def intersects(self, other: "GeoExtent") -> bool:
        return (
            self.lat_min <= other.lat_max
            and other.lat_min <= self.lat_max
            and self.lon_min <= other.lon_max
            and other.lon_min <= self.lon_max
        )


@dataclass(frozen=True)
class TimeExtent:
    start: datetime
    end: datetime

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("time start after end")

    def overlaps(self, other: "TimeExtent") -> bool:
        return self.start <= other.end and other.start <= self.end


@dataclass(frozen=True)
class DepthExtent:
    min_m: float
    max_m: float

    def __post_init__(self) -> None:
        if self.min_m < 0 or self.min_m > self.max_m:
            raise ValueError(f"bad depth range [{self.min_m}, {self.max_m}]")


@dataclass(frozen=True)
class DatasetMetadata:
    id: str
    title: str
    layout: str = "tabular"  # tabular | gridded
    abstract: str | None = None
    parameters: tuple[Parameter, ...] = ()
    campaign: str | None = None
    platform: str | None = None
    geo: GeoExtent | None = None
    time: TimeExtent | None = None
    depth: DepthExtent | None = None
    size_bytes: int = 0

    def __post_init__(self) -> None:
        if self.layout not in ("tabular", "gridded"):
            raise ValueError(f"layout must be tabular or gridded, got {self.layout!r}")
        if self.size_bytes < 0:
            raise ValueError("size_bytes must be non-negative")

    def field_text(self, field_name: str) -> str:
        """Raw text of one of the searchable fields ('' when absent)."""
        if field_name == "title":
            return self.title
        if field_name == "abstract":
            return self.abstract or ""
        if field_name == "parameters":
            return " ".join(p.name for p in self.parameters)
        if field_name == "campaign":
            return self.campaign or ""
        if field_name == "platform":
            return self.platform or ""
        raise KeyError(field_name)

    def numeric_value(self, field_name: str) -> float | None:
        if field_name == "size_bytes":
            return float(self.size_bytes)
        if field_name == "depth_min_m":
            return None if self.depth is None else self.depth.min_m
        if field_name == "depth_max_m":
            return None if self.depth is None else self.depth.max_m
        return None


@dataclass(frozen=True)
class FeatureFlags:
    """The five binary descriptors that drive supervisor routing."""

    has_geo: bool
    is_gridded: bool
    has_depth_axis: bool
    is_large: bool
    has_time: bool


def derive_feature_flags(
    meta: DatasetMetadata, size_threshold_bytes: int = DEFAULT_SIZE_THRESHOLD
) -> FeatureFlags:
    """Introspect a record into its five-dimensional routing profile.

    ``is_large`` uses a strict ``>`` against the configurable threshold, so a
    record exactly at the threshold is not large.
    """
    if size_threshold_bytes <= 0:
        raise ValueError("size_threshold_bytes must be positive")
    return FeatureFlags(
        has_geo=meta.geo is not None,
        is_gridded=meta.layout == "gridded",
        has_depth_axis=meta.depth is not None,
        is_large=meta.size_bytes > size_threshold_bytes,
        has_time=meta.time is not None,
    )


# --- corpus fixture serialization (one JSON record per line) ---

_KNOWN_KEYS = {
    "id", "title", "abstract", "parameters", "campaign", "platform",
    "geo", "time", "depth", "layout", "size_bytes",
}


def parse_instant(raw: str) -> datetime:
    dt = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def record_from_json(doc: dict, lineno: int | None = None) -> DatasetMetadata:
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise CorpusParseError(f"unknown fields {sorted(unknown)}", lineno)
    try:
        geo = GeoExtent(**doc["geo"]) if doc.get("geo") else None
        time_ext = (
            TimeExtent(parse_instant(doc["time"]["start"]), parse_instant(doc["time"]["end"]))
            if doc.get("time")
            else None
        )
        depth = DepthExtent(**doc["depth"]) if doc.get("depth") else None
        params = tuple(Parameter(p["name"], p.get("unit", "")) for p in doc.get("parameters", []))
        return DatasetMetadata(
            id=doc["id"],
            title=doc["title"],
            layout=doc.get("layout", "tabular"),
            abstract=doc.get("abstract"),
            parameters=params,
            campaign=doc.get("campaign"),
            platform=doc.get("platform"),
            geo=geo,
            time=time_ext,
            depth=depth,
            size_bytes=int(doc.get("size_bytes", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusParseError(str(exc), lineno) from exc


def record_to_json(meta: DatasetMetadata) -> dict:
    doc: dict = {"id": meta.id, "title": meta.title, "layout": meta.layout,
                 "size_bytes": meta.size_bytes}
    if meta.abstract is not None:
        doc["abstract"] = meta.abstract
    if meta.parameters:
        doc["parameters"] = [{"name": p.name, "unit": p.unit} for p in meta.parameters]
    if meta.campaign is not None:
        doc["campaign"] = meta.campaign
    if meta.platform is not None:
        doc["platform"] = meta.platform
    if meta.geo is not None:
        doc["geo"] = {"lat_min": meta.geo.lat_min, "lat_max": meta.geo.lat_max,
                      "lon_min": meta.geo.lon_min, "lon_max": meta.geo.lon_max}
    if meta.time is not None:
        doc["time"] = {"start": meta.time.start.isoformat(), "end": meta.time.end.isoformat()}
    if meta.depth is not None:
        doc["depth"] = {"min_m": meta.depth.min_m, "max_m": meta.depth.max_m}
    return doc


def load_corpus(path: str | Path) -> list[DatasetMetadata]:
    records = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusParseError(f"invalid JSON: {exc}", lineno) from exc
        records.append(record_from_json(doc, lineno))
    return records
