"""In-memory inverted index with BM25 scoring over metadata records.

Textual relevance uses BM25 (k1=1.2, b=0.75) computed over the concatenation
of title, abstract, and parameter names; structural clauses (numeric/geo/time
ranges and negation) act as hard filters contributing zero score.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass

from .metadata import TEXT_FIELDS, DatasetMetadata, DuplicateId
from .query import (
    All, Any_, BooleanQuery, GeoBox, MatchNone, Not, NumericRange, Phrase,
    Term, TimeRange, tokenize, validate_query,
)

BM25_K1 = 1.2
BM25_B = 0.75

SCORING_FIELDS = ("title", "abstract", "parameters")  # concatenation order

_EvalMap = dict[str, tuple[float, frozenset[str]]]


@dataclass(frozen=True)
class ScoredHit:
    dataset_id: str
    score: float
    matched_fields: frozenset[str]


class InMemoryCatalog:
    """Reference catalog backend; ingestion excludes readers."""

    def __init__(self) -> None:
        self._records: dict[str, DatasetMetadata] = {}
        self._field_tokens: dict[str, dict[str, list[str]]] = {}
        self._postings: dict[tuple[str, str], set[str]] = {}
        self._scoring_tf: dict[str, Counter[str]] = {}
        self._doclen: dict[str, int] = {}
        self._lock = threading.RLock()

    def __len__(self) -> int:
        return len(self._records)

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._records)

    def ingest(self, meta: DatasetMetadata) -> str:
        with self._lock:
            if meta.id in self._records:
                raise DuplicateId(meta.id)
            self._records[meta.id] = meta
            per_field = {f: tokenize(meta.field_text(f)) for f in TEXT_FIELDS}
            self._field_tokens[meta.id] = per_field
            for field_name, tokens in per_field.items():
                for token in set(tokens):
                    self._postings.setdefault((field_name, token), set()).add(meta.id)
            scoring_tokens: list[str] = []
            for field_name in SCORING_FIELDS:
                scoring_tokens.extend(per_field[field_name])
            self._scoring_tf[meta.id] = Counter(scoring_tokens)
            self._doclen[meta.id] = len(scoring_tokens)
            return meta.id

    def ingest_all(self, records) -> None:
        for meta in records:
            self.ingest(meta)

    def get(self, dataset_id: str) -> DatasetMetadata:
        with self._lock:
            return self._records[dataset_id]

    def get_many(self, dataset_ids) -> list[DatasetMetadata]:
        with self._lock:
            return [self._records[i] for i in dataset_ids]

    # --- scoring ---

    def _idf(self, token: str) -> float:
        n = len(self._records)
        df = sum(1 for tf in self._scoring_tf.values() if token in tf)
        return math.log(1.0 + (n - df + 0.5) / (df + 0.5))

    def _bm25(self, token: str, dataset_id: str) -> float:
        tf = self._scoring_tf[dataset_id][token]
        if tf == 0:
            return 0.0
        n = len(self._records)
        avgdl = sum(self._doclen.values()) / n if n else 1.0
        dl = self._doclen[dataset_id]
        denom = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * dl / max(avgdl, 1e-9))
        return self._idf(token) * tf * (BM25_K1 + 1.0) / denom

    # --- evaluation ---

    def _phrase_in(self, dataset_id: str, field: str, tokens: tuple[str, ...]) -> bool:
        hay = self._field_tokens[dataset_id][field]
        k = len(tokens)
        return any(hay[i : i + k] == list(tokens) for i in range(len(hay) - k + 1))

    def _eval(self, q: BooleanQuery) -> _EvalMap:
        if isinstance(q, MatchNone):
            return {}
        if isinstance(q, Term):
            ids = self._postings.get((q.field, q.token), set())
            return {i: (self._bm25(q.token, i), frozenset({q.field})) for i in ids}
        if isinstance(q, Phrase):
            ids = None
            for token in q.tokens:
                posting = self._postings.get((q.field, token), set())
                ids = posting if ids is None else ids & posting
                if not ids:
                    return {}
            assert ids is not None
            out: _EvalMap = {}
            for i in ids:
                if self._phrase_in(i, q.field, q.tokens):
                    score = sum(self._bm25(t, i) for t in q.tokens)
                    out[i] = (score, frozenset({q.field}))
            return out
        if isinstance(q, Not):
            inner = self._eval(q.child)
            return {i: (0.0, frozenset()) for i in self._records if i not in inner}
        if isinstance(q, All):
            positives = [self._eval(c) for c in q.children if not isinstance(c, Not)]
            negatives = [self._eval(c.child) for c in q.children if isinstance(c, Not)]
            if positives:
                ids = set(positives[0])
                for m in positives[1:]:
                    ids &= set(m)
            else:
                ids = set(self._records)
            for m in negatives:
                ids -= set(m)
            out = {}
            for i in ids:
                score = sum(m[i][0] for m in positives)
                fields: frozenset[str] = frozenset()
                for m in positives:
                    fields |= m[i][1]
                out[i] = (score, fields)
            return out
        if isinstance(q, Any_):
            out = {}
            for child in q.children:
                for i, (score, fields) in self._eval(child).items():
                    if i in out:
                        out[i] = (out[i][0] + score, out[i][1] | fields)
                    else:
                        out[i] = (score, fields)
            return out
        if isinstance(q, NumericRange):
            out = {}
            for i, meta in self._records.items():
                value = meta.numeric_value(q.field)
                if value is not None and q.lo <= value <= q.hi:
                    out[i] = (0.0, frozenset())
            return out
        if isinstance(q, GeoBox):
            return {
                i: (0.0, frozenset())
                for i, meta in self._records.items()
                if meta.geo is not None and meta.geo.intersects(q.box)
            }
        if isinstance(q, TimeRange):
            return {
                i: (0.0, frozenset())
                for i, meta in self._records.items()
                if meta.time is not None and meta.time.overlaps(q.window)
            }
        raise TypeError(f"unknown query node {type(q).__name__}")

    def execute_query(self, q: BooleanQuery, limit: int = 10) -> list[ScoredHit]:
        if limit <= 0:
            raise ValueError("limit must be positive")
        validate_query(q)
        with self._lock:
            matches = self._eval(q)
            hits = [
                ScoredHit(dataset_id=i, score=score, matched_fields=fields)
                for i, (score, fields) in matches.items()
            ]
        hits.sort(key=lambda h: (-h.score, h.dataset_id))
        return hits[:limit]
