"""The three retrieval tiers: keyword baseline, single-pass translation, and
the iterative four-stage agentic loop (translate, expand, execute/introspect,
consolidate)."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from ..catalog import (
    All,
    Any_,
    BooleanQuery,
    GeoBox,
    InMemoryCatalog,
    MatchNone,
    ScoredHit,
    TimeRange,
    keyword_query,
    text_clause,
)
from ..gateway import Backend, ChatRequest, Message, complete
from .constraints import (
    AdequacyVerdict,
    EmptyQuery,
    QueryConstraints,
    RankedEntry,
    RankedResults,
    apply_refinements,
    constraints_from_json,
)
from .scorer import RelevanceScorer, RuleScorer, score_candidates

DEFAULT_TARGET_FIELDS = ("title", "abstract", "parameters")

TRANSLATE_PROMPT = "Derive metadata search constraints for the user query below."
INTROSPECT_PROMPT = "Assess retrieval adequacy for the constraints and candidates below."

CONSTRAINTS_SCHEMA = {
    "type": "object",
    "properties": {
        "facets": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "synonyms": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                },
                "required": ["name", "synonyms"],
            },
        },
        "geo": {
            "type": ["object", "null"],
            "properties": {
                "lat_min": {"type": "number"}, "lat_max": {"type": "number"},
                "lon_min": {"type": "number"}, "lon_max": {"type": "number"},
            },
            "required": ["lat_min", "lat_max", "lon_min", "lon_max"],
        },
        "time": {
            "type": ["object", "null"],
            "properties": {"start": {"type": "string"}, "end": {"type": "string"}},
            "required": ["start", "end"],
        },
        "required_parameters": {"type": "array", "items": {"type": "string"}},
        "platform_hints": {"type": "array", "items": {"type": "string"}},
        "layout": {"type": ["string", "null"], "enum": ["gridded", "tabular", None]},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

VERDICT_SCHEMA = {
    "type": "object",
    "properties": {
        "sufficient": {"type": "boolean"},
        "missing": {"type": "array", "items": {"type": "string"}},
        "refinements": {"type": "array", "items": {"type": "object"}},
    },
    "required": ["sufficient"],
}


@dataclass(frozen=True)
class SearchConfig:
    max_rounds: int = 3
    cap: int = 24
    top_k: int = 5
    per_query_limit: int = 50
    fields: tuple[str, ...] = DEFAULT_TARGET_FIELDS
    model_tag: str = "search-model"

    def __post_init__(self) -> None:
        if self.max_rounds < 1 or self.cap < 1 or self.top_k < 1:
            raise ValueError("max_rounds, cap and top_k must all be >= 1")


def translate_intent(nl_query: str, llm: Backend,
                     model_tag: str = "search-model") -> QueryConstraints:
    """Stage 1: decompose user intent into metadata constraints."""
    if not nl_query.strip():
        raise EmptyQuery("empty natural-language query")
    prompt = (
        f"{TRANSLATE_PROMPT}\n\nQuery: {nl_query}\n\n"
        "Resolve implicit constraints (hemisphere-aware seasons, place names to"
        " coordinate boxes, epochs to date ranges) and record each resolution"
        " in notes. Respond with JSON."
    )
    request = ChatRequest(
        model_tag=model_tag,
        messages=(Message.text("user", prompt),),
        response_schema=CONSTRAINTS_SCHEMA,
    )
    response = complete(request, llm)
    return constraints_from_json(response.structured)


def expand_queries(
    c: QueryConstraints, cap: int, fields: tuple[str, ...] = DEFAULT_TARGET_FIELDS
) -> list[BooleanQuery]:
    """Stage 3: cartesian product of one synonym per facet across target
    fields, each conjoined with every structural constraint.

    Enumeration order is facet order, then synonym order, then field order;
    the list is truncated to ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    structural: list[BooleanQuery] = []
    if c.geo is not None:
        structural.append(GeoBox(c.geo))
    if c.time is not None:
        structural.append(TimeRange(c.time))
    for p in c.required_parameters:
        clause = text_clause("parameters", p)
        if not isinstance(clause, MatchNone):
            structural.append(clause)

    if not c.thematic_facets:
        return [All(tuple(structural))] if structural else []

    queries: list[BooleanQuery] = []
    combo_indices = [0] * len(c.thematic_facets)

    def synonym_combos():
        # odometer over facet synonym lists: first facet varies slowest
        while True:
            yield [f.synonyms[i] for f, i in zip(c.thematic_facets, combo_indices)]
            for pos in reversed(range(len(combo_indices))):
                combo_indices[pos] += 1
                if combo_indices[pos] < len(c.thematic_facets[pos].synonyms):
                    break
                combo_indices[pos] = 0
            else:
                return

    for synonyms in synonym_combos():
        for field in fields:
            clauses: list[BooleanQuery] = []
            degenerate = False
            for synonym in synonyms:
                clause = text_clause(field, synonym)
                if isinstance(clause, MatchNone):
                    degenerate = True
                    break
                clauses.append(clause)
            if degenerate:
                continue
            queries.append(All(tuple(clauses + structural)))
            if len(queries) >= cap:
                return queries
    return queries


def _candidate_summary(results: list[list[ScoredHit]], catalog: InMemoryCatalog,
                       limit: int = 8) -> list[str]:
    best: dict[str, float] = {}
    for hits in results:
        for h in hits:
            best[h.dataset_id] = max(best.get(h.dataset_id, 0.0), h.score)
    top = sorted(best.items(), key=lambda kv: (-kv[1], kv[0]))[:limit]
    lines = []
    for dataset_id, _ in top:
        meta = catalog.get(dataset_id)
        lines.append(f"- {dataset_id} | {meta.title} | layout={meta.layout}")
    return lines


def introspect(
    results: list[list[ScoredHit]],
    c: QueryConstraints,
    catalog: InMemoryCatalog,
    llm: Backend,
    model_tag: str = "search-model",
) -> AdequacyVerdict:
    """Stage 2: evaluate returned metadata against the constraints."""
    total_hits = sum(len(hits) for hits in results)
    lines = [INTROSPECT_PROMPT, "", "Constraints:"]
    lines.extend(c.summary_lines())
    lines.append("")
    if total_hits == 0:
        lines.append("ZERO RECALL: no candidates were returned by any query.")
    else:
        lines.append(f"Total hits: {total_hits}")
        lines.append("Top candidates:")
        lines.extend(_candidate_summary(results, catalog))
    lines.append("Respond with JSON: sufficient, missing, refinements.")
    request = ChatRequest(
        model_tag=model_tag,
        messages=(Message.text("user", "\n".join(lines)),),
        response_schema=VERDICT_SCHEMA,
    )
    response = complete(request, llm)
    doc = response.structured
    return AdequacyVerdict(
        sufficient=bool(doc["sufficient"]),
        missing=tuple(doc.get("missing", [])),
        refinements=tuple(doc.get("refinements", [])),
    )


def consolidate(
    results: list[list[ScoredHit]],
    c: QueryConstraints,
    catalog: InMemoryCatalog,
    judge: RelevanceScorer,
) -> RankedResults:
    """Stage 4: deduplicate by dataset id and rank by the relevance scorer."""
    index_scores: dict[str, float] = {}
    order: list[str] = []
    for hits in results:
        for h in hits:
            if h.dataset_id not in index_scores:
                order.append(h.dataset_id)
            index_scores[h.dataset_id] = max(index_scores.get(h.dataset_id, 0.0), h.score)
    scored = score_candidates(catalog, order, c, judge, index_scores)
    entries = tuple(
        RankedEntry(dataset_id=i, relevance_score=s, rationale=r)
        for i, s, r in sorted(scored, key=lambda t: (-t[1], t[0]))
    )
    return RankedResults(entries=entries, queries_issued=len(results), rounds=0)


def _execute_concurrently(
    catalog: InMemoryCatalog, queries: list[BooleanQuery], limit: int
) -> list[list[ScoredHit]]:
    if not queries:
        return []
    with ThreadPoolExecutor(max_workers=min(8, len(queries))) as pool:
        return list(pool.map(lambda q: catalog.execute_query(q, limit=limit), queries))


def _drop_rarest_facet(c: QueryConstraints, catalog: InMemoryCatalog,
                       fields: tuple[str, ...]) -> QueryConstraints:
    """Zero-hit broadening: drop the facet with the fewest index matches."""
    if len(c.thematic_facets) <= 1:
        return c
    counts = []
    for facet in c.thematic_facets:
        clauses = [
            clause
            for synonym in facet.synonyms
            for field in fields
            for clause in [text_clause(field, synonym)]
            if not isinstance(clause, MatchNone)
        ]
        if not clauses:
            counts.append(0)
            continue
        hits = catalog.execute_query(Any_(tuple(clauses)), limit=max(1, len(catalog)))
        counts.append(len(hits))
    # ties drop the later-listed facet, keeping the primary theme
    rarest = min(range(len(counts)), key=lambda i: (counts[i], -i))
    facets = tuple(f for i, f in enumerate(c.thematic_facets) if i != rarest)
    return replace(c, thematic_facets=facets)


def agentic_search(
    nl_query: str,
    catalog: InMemoryCatalog,
    llm: Backend,
    config: SearchConfig = SearchConfig(),
    judge: RelevanceScorer | None = None,
) -> RankedResults:
    """The iterative loop: translate/refine, expand, execute, introspect.

    Stops when a verdict is sufficient or ``max_rounds`` is reached; the
    candidate pool accumulates across rounds so refinement never drops an
    already-retained candidate.
    """
    judge = judge if judge is not None else RuleScorer()
    constraints = translate_intent(nl_query, llm, config.model_tag)
    pool: list[list[ScoredHit]] = []
    rounds = 0
    queries_issued = 0
    while rounds < config.max_rounds:
        rounds += 1
        queries = expand_queries(constraints, config.cap, config.fields)
        round_results = _execute_concurrently(catalog, queries, config.per_query_limit)
        queries_issued += len(queries)
        pool.extend(round_results)
        round_hits = sum(len(hits) for hits in round_results)

        if round_hits == 0 and len(constraints.thematic_facets) > 1:
            # broaden before spending a model call on an empty round
            constraints = _drop_rarest_facet(constraints, catalog, config.fields)
            continue
        if rounds >= config.max_rounds:
            break
        verdict = introspect(round_results, constraints, catalog, llm, config.model_tag)
        if verdict.sufficient:
            break
        constraints = apply_refinements(constraints, verdict.refinements)

    consolidated = consolidate(pool, constraints, catalog, judge)
    return RankedResults(
        entries=consolidated.entries[: config.top_k],
        queries_issued=queries_issued,
        rounds=rounds,
    )


def baseline_search(nl_query: str, catalog: InMemoryCatalog, top_k: int = 5) -> RankedResults:
    """Keyword tier: tokens matched verbatim, index score capped at 10."""
    hits = catalog.execute_query(keyword_query(nl_query), limit=max(top_k, 1))
    entries = tuple(
        RankedEntry(
            dataset_id=h.dataset_id,
            relevance_score=min(10.0, h.score),
            rationale="keyword match",
        )
        for h in sorted(hits, key=lambda h: (-min(10.0, h.score), h.dataset_id))[:top_k]
    )
    return RankedResults(entries=entries, queries_issued=1, rounds=1)


def simple_llm_search(
    nl_query: str,
    catalog: InMemoryCatalog,
    llm: Backend,
    top_k: int = 5,
    judge: RelevanceScorer | None = None,
    model_tag: str = "search-model",
) -> RankedResults:
    """Single-pass tier: one translation call, one query, no refinement."""
    judge = judge if judge is not None else RuleScorer()
    constraints = translate_intent(nl_query, llm, model_tag)
    queries = expand_queries(constraints, cap=1)
    if not queries:
        raise EmptyQuery("intent translation produced no executable query")
    hits = catalog.execute_query(queries[0], limit=50)
    consolidated = consolidate([hits], constraints, catalog, judge)
    return RankedResults(
        entries=consolidated.entries[:top_k], queries_issued=1, rounds=1
    )
