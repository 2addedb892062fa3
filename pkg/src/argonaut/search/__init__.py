from .constraints import (
    AdequacyVerdict,
    EmptyQuery,
    Facet,
    QueryConstraints,
    RankedEntry,
    RankedResults,
    SearchError,
    apply_refinements,
    constraints_from_json,
)
from .pipeline import (
    CONSTRAINTS_SCHEMA,
    DEFAULT_TARGET_FIELDS,
    INTROSPECT_PROMPT,
    TRANSLATE_PROMPT,
    VERDICT_SCHEMA,
    SearchConfig,
    agentic_search,
    baseline_search,
    consolidate,
    expand_queries,
    introspect,
    simple_llm_search,
    translate_intent,
)
from .scorer import JUDGE_SCHEMA, ModelJudgeScorer, RelevanceScorer, RuleScorer

__all__ = [
    "AdequacyVerdict", "CONSTRAINTS_SCHEMA", "DEFAULT_TARGET_FIELDS",
    "EmptyQuery", "Facet", "INTROSPECT_PROMPT", "JUDGE_SCHEMA",
    "ModelJudgeScorer", "QueryConstraints", "RankedEntry", "RankedResults",
    "RelevanceScorer", "RuleScorer", "SearchConfig", "SearchError",
    "TRANSLATE_PROMPT", "VERDICT_SCHEMA", "agentic_search",
    "apply_refinements", "baseline_search", "consolidate",
    "constraints_from_json", "expand_queries", "introspect",
    "simple_llm_search", "translate_intent",
]
