"""Structured search intent: facets, structural constraints, verdicts, results."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from ..catalog import GeoExtent, TimeExtent, parse_instant


class SearchError(Exception):
    pass


class EmptyQuery(SearchError):
    """The translated intent carried neither a facet nor a structural constraint."""


@dataclass(frozen=True)
class Facet:
    name: str
    synonyms: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.synonyms:
            raise ValueError(f"facet {self.name!r} needs at least one synonym")


@dataclass(frozen=True)
class QueryConstraints:
    """Decomposed user intent.

    ``layout_requirement`` ("gridded"/"tabular") captures product-level intent
    (e.g. gridded products vs in-situ tables); it is enforced by the relevance
    scorer rather than the Boolean index. ``derivation_notes`` records every
    implicit resolution made during translation (seasons, place names, ...).
    """

    thematic_facets: tuple[Facet, ...] = ()
    geo: GeoExtent | None = None
    time: TimeExtent | None = None
    required_parameters: tuple[str, ...] = ()
    platform_hints: tuple[str, ...] = ()
    layout_requirement: str | None = None
    derivation_notes: tuple[str, ...] = ()

    def has_structural(self) -> bool:
        return (
            self.geo is not None
            or self.time is not None
            or bool(self.required_parameters)
            or self.layout_requirement is not None
        )

    def validate(self) -> None:
        if not self.thematic_facets and not self.has_structural():
            raise EmptyQuery("no facets and no structural constraints")
        if self.layout_requirement not in (None, "gridded", "tabular"):
            raise ValueError(f"bad layout requirement {self.layout_requirement!r}")

    def summary_lines(self) -> list[str]:
        lines = [
            f"facet {f.name}: " + " | ".join(f.synonyms) for f in self.thematic_facets
        ]
        if self.geo is not None:
            lines.append(
                f"geo box: lat [{self.geo.lat_min}, {self.geo.lat_max}] "
                f"lon [{self.geo.lon_min}, {self.geo.lon_max}]"
            )
        if self.time is not None:
            lines.append(f"time window: {self.time.start.isoformat()} .. {self.time.end.isoformat()}")
        for p in self.required_parameters:
            lines.append(f"required parameter: {p}")
        if self.layout_requirement:
            lines.append(f"required layout: {self.layout_requirement}")
        for note in self.derivation_notes:
            lines.append(f"note: {note}")
        return lines


@dataclass(frozen=True)
class AdequacyVerdict:
    sufficient: bool
    missing: tuple[str, ...] = ()
    refinements: tuple[dict[str, Any], ...] = ()

    def __post_init__(self) -> None:
        if self.sufficient and self.missing:
            raise ValueError("a sufficient verdict cannot list missing constraints")


@dataclass(frozen=True)
class RankedEntry:
    dataset_id: str
    relevance_score: float
    rationale: str

    def __post_init__(self) -> None:
        if not 0.0 <= self.relevance_score <= 10.0:
            raise ValueError("relevance score must be in [0, 10]")


@dataclass(frozen=True)
class RankedResults:
    entries: tuple[RankedEntry, ...]
    queries_issued: int = 0
    rounds: int = 0

    def __post_init__(self) -> None:
        ids = [e.dataset_id for e in self.entries]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate dataset ids in ranked results")
        ordered = sorted(self.entries, key=lambda e: (-e.relevance_score, e.dataset_id))
        if tuple(ordered) != self.entries:
            raise ValueError("entries must be sorted by (score desc, id asc)")

    def ids(self) -> list[str]:
        return [e.dataset_id for e in self.entries]


def constraints_from_json(doc: dict[str, Any]) -> QueryConstraints:
    facets = tuple(
        Facet(name=f["name"], synonyms=tuple(f["synonyms"])) for f in doc.get("facets", [])
    )
    geo = GeoExtent(**doc["geo"]) if doc.get("geo") else None
    time_ext = (
        TimeExtent(parse_instant(doc["time"]["start"]), parse_instant(doc["time"]["end"]))
        if doc.get("time")
        else None
    )
    constraints = QueryConstraints(
        thematic_facets=facets,
        geo=geo,
        time=time_ext,
        required_parameters=tuple(doc.get("required_parameters", [])),
        platform_hints=tuple(doc.get("platform_hints", [])),
        layout_requirement=doc.get("layout"),
        derivation_notes=tuple(doc.get("notes", [])),
    )
    constraints.validate()
    return constraints


def apply_refinements(
    constraints: QueryConstraints, edits: tuple[dict[str, Any], ...]
) -> QueryConstraints:
    """Apply verdict refinements as facet/constraint edits (in order)."""
    c = constraints
    for edit in edits:
        action = edit.get("action")
        if action == "add_facet":
            c = replace(
                c,
                thematic_facets=c.thematic_facets
                + (Facet(edit["name"], tuple(edit["synonyms"])),),
            )
        elif action == "drop_facet":
            c = replace(
                c,
                thematic_facets=tuple(f for f in c.thematic_facets if f.name != edit["name"]),
            )
        elif action == "add_synonyms":
            facets = tuple(
                Facet(f.name, f.synonyms + tuple(s for s in edit["synonyms"]
                                                 if s not in f.synonyms))
                if f.name == edit["name"]
                else f
                for f in c.thematic_facets
            )
            c = replace(c, thematic_facets=facets)
        elif action == "set_time":
            c = replace(
                c, time=TimeExtent(parse_instant(edit["start"]), parse_instant(edit["end"]))
            )
        elif action == "set_geo":
            c = replace(c, geo=GeoExtent(**edit["box"]))
        elif action == "require_parameter":
            if edit["name"] not in c.required_parameters:
                c = replace(c, required_parameters=c.required_parameters + (edit["name"],))
        elif action == "require_layout":
            c = replace(c, layout_requirement=edit["layout"])
        else:
            raise ValueError(f"unknown refinement action {action!r}")
    return c
