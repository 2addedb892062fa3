from .index import BM25_B, BM25_K1, InMemoryCatalog, ScoredHit
from .metadata import (
    DEFAULT_SIZE_THRESHOLD,
    CatalogError,
    CorpusParseError,
    DatasetMetadata,
    DepthExtent,
    DuplicateId,
    FeatureFlags,
    GeoExtent,
    Parameter,
    TimeExtent,
    derive_feature_flags,
    load_corpus,
    parse_instant,
    record_from_json,
    record_to_json,
)
from .query import (
    All,
    Any_,
    BooleanQuery,
    GeoBox,
    MalformedQuery,
    MatchNone,
    Not,
    NumericRange,
    Phrase,
    Term,
    TimeRange,
    keyword_query,
    text_clause,
    tokenize,
    validate_query,
)

__all__ = [
    "All", "Any_", "BM25_B", "BM25_K1", "BooleanQuery", "CatalogError",
    "CorpusParseError", "DEFAULT_SIZE_THRESHOLD", "DatasetMetadata",
    "DepthExtent", "DuplicateId", "FeatureFlags", "GeoBox", "GeoExtent",
    "InMemoryCatalog", "MalformedQuery", "MatchNone", "Not", "NumericRange",
    "Parameter", "Phrase", "ScoredHit", "Term", "TimeExtent", "TimeRange",
    "derive_feature_flags", "keyword_query", "load_corpus", "parse_instant",
    "record_from_json", "record_to_json", "text_clause", "tokenize",
    "validate_query",
]
