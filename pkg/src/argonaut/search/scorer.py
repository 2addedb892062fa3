"""Candidate relevance scoring: deterministic rule scorer and model judge."""

from __future__ import annotations

from typing import Protocol

from ..catalog import DatasetMetadata, InMemoryCatalog, tokenize
from ..gateway import Backend, ChatRequest, Message, complete
from .constraints import QueryConstraints

JUDGE_SCHEMA = {
    "type": "object",
    "properties": {
        "score": {"type": "number", "minimum": 0, "maximum": 10},
        "rationale": {"type": "string"},
    },
    "required": ["score", "rationale"],
}

JUDGE_PROMPT = "Score dataset relevance from 0 to 10 against the constraints below."


class RelevanceScorer(Protocol):
    def score(self, meta: DatasetMetadata, constraints: QueryConstraints,
              index_score: float) -> tuple[float, str]: ...


def _contains_tokens(haystack_tokens: list[str], needle: str) -> bool:
    needle_tokens = tokenize(needle)
    if not needle_tokens:
        return False
    k = len(needle_tokens)
    return any(
        haystack_tokens[i : i + k] == needle_tokens
        for i in range(len(haystack_tokens) - k + 1)
    )


class RuleScorer:
    """Deterministic weighted-sum scorer used in tests and the oracle paths.

    +4 structural-constraint satisfaction, +4 facet coverage in
    title/parameters, +2 abstract coverage.
    """

    def score(self, meta: DatasetMetadata, constraints: QueryConstraints,
              index_score: float = 0.0) -> tuple[float, str]:
        checks: list[bool] = []
        if constraints.geo is not None:
            checks.append(meta.geo is not None and meta.geo.intersects(constraints.geo))
        if constraints.time is not None:
            checks.append(meta.time is not None and meta.time.overlaps(constraints.time))
        param_tokens = tokenize(meta.field_text("parameters"))
        for p in constraints.required_parameters:
            checks.append(_contains_tokens(param_tokens, p))
        if constraints.layout_requirement is not None:
            checks.append(meta.layout == constraints.layout_requirement)
        structural = sum(checks) / len(checks) if checks else 1.0

        title_tokens = tokenize(meta.field_text("title")) + param_tokens
        abstract_tokens = tokenize(meta.field_text("abstract"))
        facets = constraints.thematic_facets
        if facets:
            covered = sum(
                1 for f in facets if any(_contains_tokens(title_tokens, s) for s in f.synonyms)
            )
            in_abstract = sum(
                1 for f in facets if any(_contains_tokens(abstract_tokens, s) for s in f.synonyms)
            )
            facet_cov = covered / len(facets)
            abstract_cov = in_abstract / len(facets)
        else:
            facet_cov = abstract_cov = 1.0

        score = 4.0 * structural + 4.0 * facet_cov + 2.0 * abstract_cov
        rationale = (
            f"structural {structural:.2f}, title/parameter coverage {facet_cov:.2f}, "
            f"abstract coverage {abstract_cov:.2f}"
        )
        return min(10.0, score), rationale


class ModelJudgeScorer:
    """Prompts the model per candidate for a schema-constrained 0-10 score."""

    def __init__(self, llm: Backend, model_tag: str = "judge"):
        self._llm = llm
        self._model_tag = model_tag

    def score(self, meta: DatasetMetadata, constraints: QueryConstraints,
              index_score: float = 0.0) -> tuple[float, str]:
        lines = [JUDGE_PROMPT, "", "Constraints:"]
        lines.extend(constraints.summary_lines())
        lines += [
            "",
            "Candidate:",
            f"id: {meta.id}",
            f"title: {meta.title}",
            f"layout: {meta.layout}",
            f"parameters: {meta.field_text('parameters')}",
            f"abstract: {meta.abstract or ''}",
        ]
        request = ChatRequest(
            model_tag=self._model_tag,
            messages=(Message.text("user", "\n".join(lines)),),
            response_schema=JUDGE_SCHEMA,
        )
        response = complete(request, self._llm)
        value = response.structured
        return max(0.0, min(10.0, float(value["score"]))), str(value["rationale"])


def score_candidates(
    catalog: InMemoryCatalog,
    dataset_ids: list[str],
    constraints: QueryConstraints,
    judge: RelevanceScorer,
    index_scores: dict[str, float],
) -> list[tuple[str, float, str]]:
    out = []
    for dataset_id in dataset_ids:
        meta = catalog.get(dataset_id)
        score, rationale = judge.score(meta, constraints, index_scores.get(dataset_id, 0.0))
        out.append((dataset_id, score, rationale))
    return out
