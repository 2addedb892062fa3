"""Vision-model figure critique against the five-dimension rubric."""

from __future__ import annotations

from dataclasses import dataclass

from ..gateway import Backend, ChatRequest, ImagePart, Message, TextPart, complete

DIMENSIONS = ("axes_units", "legend", "domain_conventions", "overlap", "readability")

DEFAULT_RUBRIC = """Score the figure 0-10 overall (composite) and judge five dimensions:
- axes_units: axis labelling and units present and correct
- legend: legend complete and readable
- domain_conventions: domain conventions respected (inverted depth axes,
  standard palettes, map conventions)
- overlap: no overlapping text or occluded elements
- readability: overall readability at publication scale
Return JSON: composite, dimensions (name/pass/note per dimension), feedback
(actionable strings; required when the figure needs correction)."""

CRITIQUE_SCHEMA = {
    "type": "object",
    "properties": {
        "composite": {"type": "integer", "minimum": 0, "maximum": 10},
        "dimensions": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string", "enum": list(DIMENSIONS)},
                    "pass": {"type": "boolean"},
                    "note": {"type": "string"},
                },
                "required": ["name", "pass"],
            },
        },
        "feedback": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["composite"],
}

IMAGE_MEDIA_TYPES = ("image/png", "image/svg+xml", "image/jpeg")

DEFAULT_THRESHOLD = 8


class VisualQcError(Exception):
    pass


class NotAnImage(VisualQcError):
    pass


@dataclass(frozen=True)
class DimensionJudgment:
    name: str
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class Critique:
    composite: int
    dimensions: tuple[DimensionJudgment, ...]
    feedback: tuple[str, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.composite <= 10:
            raise ValueError("composite must be in [0, 10]")
        names = tuple(d.name for d in self.dimensions)
        if names != DIMENSIONS:
            raise ValueError(f"dimensions must be exactly {DIMENSIONS}, got {names}")


def _normalize_dimensions(raw: list[dict] | None) -> tuple[DimensionJudgment, ...]:
    by_name = {d["name"]: d for d in (raw or [])}
    return tuple(
        DimensionJudgment(
            name=name,
            passed=bool(by_name.get(name, {}).get("pass", True)),
            note=str(by_name.get(name, {}).get("note", "")),
        )
        for name in DIMENSIONS
    )


def critique(
    image: bytes,
    media_type: str,
    vlm: Backend,
    rubric: str = DEFAULT_RUBRIC,
    threshold: int = DEFAULT_THRESHOLD,
    model_tag: str = "vision-model",
) -> Critique:
    """One schema-constrained vision call judging a figure.

    The composite is the critic's single integer judgment; dimension passes
    are advisory. Feedback is guaranteed non-empty for below-threshold scores
    (synthesized from failing dimensions if the critic omitted it).
    """
    if not image:
        raise NotAnImage("empty image payload")
    if media_type not in IMAGE_MEDIA_TYPES:
        raise NotAnImage(f"unsupported media type {media_type!r}")
    request = ChatRequest(
        model_tag=model_tag,
        messages=(
            Message(role="user", parts=(TextPart(rubric), ImagePart(image, media_type))),
        ),
        response_schema=CRITIQUE_SCHEMA,
    )
    response = complete(request, vlm)
    doc = response.structured
    composite = int(doc["composite"])
    dimensions = _normalize_dimensions(doc.get("dimensions"))
    feedback = tuple(str(f) for f in doc.get("feedback", []))
    if composite < threshold and not feedback:
        failing = [d for d in dimensions if not d.passed and d.note]
        feedback = tuple(d.note for d in failing) or (
            f"composite {composite} below acceptance threshold {threshold}; "
            "improve labelling, legend placement and readability",
        )
    return Critique(composite=composite, dimensions=dimensions, feedback=feedback)
