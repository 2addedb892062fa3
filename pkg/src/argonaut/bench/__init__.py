from .harness import (
    JUDGE_RUBRIC,
    JUDGE_SCHEMA,
    TOP_K,
    emit_report,
    format_table,
    load_queries,
    model_judge,
    oracle_judge,
    report_from_json,
    report_to_json,
    run_benchmark,
)
from .types import (
    ARCHITECTURES,
    CATEGORIES,
    METRICS,
    BenchError,
    BenchQuery,
    BenchReport,
    JudgeScores,
    MetricSummary,
    ParseError,
    RawRow,
)

__all__ = [
    "ARCHITECTURES", "BenchError", "BenchQuery", "BenchReport", "CATEGORIES",
    "JUDGE_RUBRIC", "JUDGE_SCHEMA", "JudgeScores", "METRICS", "MetricSummary",
    "ParseError", "RawRow", "TOP_K", "emit_report", "format_table",
    "load_queries", "model_judge", "oracle_judge", "report_from_json",
    "report_to_json", "run_benchmark",
]
