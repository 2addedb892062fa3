"""Benchmark domain types: queries, judge scores, aggregated report."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..catalog import GeoExtent, TimeExtent

CATEGORIES = {
    1: "SpecificEntity",
    2: "BroadThematic",
    3: "SpatiotemporalSlicing",
    4: "ParameterSpecific",
    5: "CrossDomain",
}

METRICS = ("m1_precision", "m2_spatiotemporal", "m3_parameter_coverage",
           "m4_access_usability", "m5_noise_reduction")

ARCHITECTURES = ("baseline", "simple", "agentic")


class BenchError(Exception):
    pass


class ParseError(BenchError):
    def __init__(self, message: str, lineno: int | None = None):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno


@dataclass(frozen=True)
class BenchQuery:
    id: str
    text: str
    category: int
    relevant_ids: tuple[str, ...] = ()
    geo: GeoExtent | None = None
    time: TimeExtent | None = None
    required_parameters: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"category must be 1..5, got {self.category}")


@dataclass(frozen=True)
class JudgeScores:
    m1_precision: float
    m2_spatiotemporal: float
    m3_parameter_coverage: float
    m4_access_usability: float
    m5_noise_reduction: float

    def __post_init__(self) -> None:
        for name in METRICS:
            value = getattr(self, name)
            if not 0.0 <= value <= 10.0:
                raise ValueError(f"{name} out of [0, 10]: {value}")

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRICS}

    @property
    def mean(self) -> float:
        return sum(self.as_dict().values()) / len(METRICS)

    @classmethod
    def zeros(cls) -> "JudgeScores":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class RawRow:
    query_id: str
    architecture: str
    scores: JudgeScores
    error: str | None = None


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    std_dev: float  # population standard deviation


@dataclass
class BenchReport:
    per_architecture: dict[str, dict[str, MetricSummary]] = field(default_factory=dict)
    overall: dict[str, float] = field(default_factory=dict)
    raw: list[RawRow] = field(default_factory=list)

    def architectures(self) -> list[str]:
        return sorted(self.per_architecture)
