"""Benchmark runner: load queries, run architectures, judge, aggregate."""

from __future__ import annotations

import json
import math
import warnings
from collections import Counter
from pathlib import Path

from ..catalog import GeoExtent, InMemoryCatalog, TimeExtent, parse_instant
from ..gateway import Backend, ChatRequest, Message, complete
from ..search import (
    RankedResults,
    SearchConfig,
    agentic_search,
    baseline_search,
    simple_llm_search,
)
from .types import (
    ARCHITECTURES,
    CATEGORIES,
    METRICS,
    BenchQuery,
    BenchReport,
    JudgeScores,
    MetricSummary,
    ParseError,
    RawRow,
)

JUDGE_RUBRIC = """Judge the retrieved datasets against the query on five metrics, 0-10 each:
m1_precision: overall relevance to the scientific question
m2_spatiotemporal: adherence to requested geographic and temporal constraints
m3_parameter_coverage: presence of the specific variables requested
m4_access_usability: suitability for immediate computational analysis
m5_noise_reduction: absence of false positives
Respond with JSON carrying those five keys."""

JUDGE_SCHEMA = {
    "type": "object",
    "properties": {name: {"type": "number", "minimum": 0, "maximum": 10} for name in METRICS},
    "required": list(METRICS),
}

TOP_K = 5


def load_queries(path: str | Path) -> list[BenchQuery]:
    """Parse the JSONL query fixture; duplicate ids and bad rows are errors,
    category imbalance is only a warning."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    queries: list[BenchQuery] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", lineno) from exc
        try:
            qid = doc["id"]
            if qid in seen:
                raise ParseError(f"duplicate query id {qid!r}", lineno)
            seen.add(qid)
            geo = GeoExtent(**doc["geo"]) if doc.get("geo") else None
            time_ext = (
                TimeExtent(parse_instant(doc["time"]["start"]),
                           parse_instant(doc["time"]["end"]))
                if doc.get("time") else None
            )
            queries.append(BenchQuery(
                id=qid,
                text=doc["text"],
                category=int(doc["category"]),
                relevant_ids=tuple(doc.get("relevant_ids", [])),
                geo=geo,
                time=time_ext,
                required_parameters=tuple(doc.get("required_parameters", [])),
            ))
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(str(exc), lineno) from exc
    if not queries:
        raise ParseError("query file is empty")
    counts = Counter(q.category for q in queries)
    if len(set(counts.values())) > 1 or set(counts) != set(CATEGORIES):
        warnings.warn(
            f"unbalanced category counts: "
            f"{ {CATEGORIES[c]: counts.get(c, 0) for c in CATEGORIES} }",
            stacklevel=2,
        )
    return queries


def _record_satisfies(meta, query: BenchQuery) -> bool:
    if query.geo is not None:
        if meta.geo is None or not meta.geo.intersects(query.geo):
            return False
    if query.time is not None:
        if meta.time is None or not meta.time.overlaps(query.time):
            return False
    return True


def _has_required_parameters(meta, query: BenchQuery) -> bool:
    from ..catalog import tokenize

    param_tokens = tokenize(meta.field_text("parameters"))
    for required in query.required_parameters:
        needle = tokenize(required)
        k = len(needle)
        if not any(param_tokens[i:i + k] == needle
                   for i in range(len(param_tokens) - k + 1)):
            return False
    return True


def oracle_judge(query: BenchQuery, results: RankedResults,
                 catalog: InMemoryCatalog) -> JudgeScores:
    """Deterministic judge computed from the query's ground-truth annotations."""
    ids = results.ids()[:TOP_K]
    if not ids:
        return JudgeScores.zeros()
    metas = [catalog.get(i) for i in ids]
    relevant = set(query.relevant_ids)
    n = len(ids)
    m1 = 10.0 * sum(1 for i in ids if i in relevant) / n
    if query.geo is None and query.time is None:
        m2 = 10.0
    else:
        m2 = 10.0 * sum(1 for m in metas if _record_satisfies(m, query)) / n
    if not query.required_parameters:
        m3 = 10.0
    else:
        m3 = 10.0 * sum(1 for m in metas if _has_required_parameters(m, query)) / n
    m4 = sum(10.0 if m.parameters else 5.0 for m in metas) / n
    m5 = 10.0 * (1.0 - sum(1 for i in ids if i not in relevant) / n)
    return JudgeScores(m1, m2, m3, m4, m5)


def model_judge(query: BenchQuery, results: RankedResults, catalog: InMemoryCatalog,
                judge_backend: Backend, model_tag: str = "judge-model") -> JudgeScores:
    """LLM-as-judge path: one schema-constrained call over the top-5 metadata."""
    ids = results.ids()[:TOP_K]
    if not ids:
        return JudgeScores.zeros()
    lines = [JUDGE_RUBRIC, "", f"Query ({CATEGORIES[query.category]}): {query.text}", "",
             "Retrieved datasets:"]
    for i in ids:
        meta = catalog.get(i)
        lines.append(f"- {i} | {meta.title} | layout={meta.layout} | "
                     f"parameters: {meta.field_text('parameters')}")
    request = ChatRequest(
        model_tag=model_tag,
        messages=(Message.text("user", "\n".join(lines)),),
        response_schema=JUDGE_SCHEMA,
    )
    response = complete(request, judge_backend)
    doc = response.structured
    return JudgeScores(**{name: float(doc[name]) for name in METRICS})


def _search(architecture: str, query: BenchQuery, catalog: InMemoryCatalog,
            llm: Backend | None, config: SearchConfig) -> RankedResults:
    if architecture == "baseline":
        return baseline_search(query.text, catalog, top_k=config.top_k)
    if llm is None:
        raise ValueError(f"architecture {architecture!r} needs a model backend")
    if architecture == "simple":
        return simple_llm_search(query.text, catalog, llm, top_k=config.top_k,
                                 model_tag=config.model_tag)
    if architecture == "agentic":
        return agentic_search(query.text, catalog, llm, config)
    raise ValueError(f"unknown architecture {architecture!r}")


def run_benchmark(
    queries: list[BenchQuery],
    catalog: InMemoryCatalog,
    architectures: tuple[str, ...] = ARCHITECTURES,
    llm: Backend | None = None,
    judge_backend: Backend | None = None,
    judge: str = "oracle",
    config: SearchConfig | None = None,
) -> BenchReport:
    """Every query through every architecture; top-5 judged; aggregation.

    Individual query failures score zero with an error note and the run
    continues; deterministic under scripted backends and the oracle judge.
    """
    if not architectures:
        raise ValueError("need at least one architecture")
    config = config or SearchConfig(top_k=TOP_K)
    report = BenchReport()
    for architecture in sorted(architectures):
        rows: list[RawRow] = []
        for query in sorted(queries, key=lambda q: q.id):
            try:
                results = _search(architecture, query, catalog, llm, config)
                if judge == "model":
                    if judge_backend is None:
                        raise ValueError("model judge requires a judge backend")
                    scores = model_judge(query, results, catalog, judge_backend)
                else:
                    scores = oracle_judge(query, results, catalog)
                rows.append(RawRow(query.id, architecture, scores))
            except Exception as exc:  # scored zero, run continues
                rows.append(RawRow(query.id, architecture, JudgeScores.zeros(),
                                   error=f"{type(exc).__name__}: {exc}"))
        report.raw.extend(rows)
        summary: dict[str, MetricSummary] = {}
        for metric in METRICS:
            values = [getattr(r.scores, metric) for r in rows]
            mean = sum(values) / len(values)
            std = math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))
            summary[metric] = MetricSummary(mean=mean, std_dev=std)
        report.per_architecture[architecture] = summary
        report.overall[architecture] = sum(s.mean for s in summary.values()) / len(METRICS)
    return report


# --- emission ---

def report_to_json(report: BenchReport) -> dict:
    return {
        "per_architecture": {
            arch: {m: {"mean": s.mean, "std_dev": s.std_dev} for m, s in metrics.items()}
            for arch, metrics in report.per_architecture.items()
        },
        "overall": dict(report.overall),
        "raw": [
            {"query_id": r.query_id, "architecture": r.architecture,
             "scores": r.scores.as_dict(), "error": r.error}
            for r in report.raw
        ],
    }


def report_from_json(doc: dict) -> BenchReport:
    report = BenchReport()
    for arch, metrics in doc["per_architecture"].items():
        report.per_architecture[arch] = {
            m: MetricSummary(mean=v["mean"], std_dev=v["std_dev"]) for m, v in metrics.items()
        }
    report.overall = dict(doc["overall"])
    report.raw = [
        RawRow(r["query_id"], r["architecture"], JudgeScores(**r["scores"]), r.get("error"))
        for r in doc["raw"]
    ]
    return report


def format_table(report: BenchReport) -> str:
    lines = [f"{'architecture':<12} {'metric':<24} {'mean':>7} {'std':>7}"]
    lines.append("-" * 53)
    for arch in report.architectures():
        for metric in METRICS:
            s = report.per_architecture[arch][metric]
            lines.append(f"{arch:<12} {metric:<24} {s.mean:>7.2f} {s.std_dev:>7.2f}")
        lines.append(f"{arch:<12} {'overall':<24} {report.overall[arch]:>7.2f}")
        lines.append("-" * 53)
    return "\n".join(lines) + "\n"


def emit_report(report: BenchReport, out_path: str | Path, format: str = "table") -> None:
    path = Path(out_path)
    if format == "table":
        path.write_text(format_table(report), encoding="utf-8")
    elif format == "machine":
        path.write_text(json.dumps(report_to_json(report), sort_keys=True, indent=2) + "\n",
                        encoding="utf-8")
    else:
        raise ValueError(f"unknown report format {format!r}")
