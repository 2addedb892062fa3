"""Boolean retrieval query AST and the keyword (baseline-tier) query form."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .metadata import TEXT_FIELDS, GeoExtent, TimeExtent

NUMERIC_FIELDS = ("size_bytes", "depth_min_m", "depth_max_m")

_TOKEN_RE = re.compile(r"[0-9a-z]+")


class MalformedQuery(Exception):
    pass


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, no stemming."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class Term:
    field: str
    token: str


@dataclass(frozen=True)
class Phrase:
    field: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class All:
    children: tuple["BooleanQuery", ...]


@dataclass(frozen=True)
class Any_:
    children: tuple["BooleanQuery", ...]


@dataclass(frozen=True)
class Not:
    child: "BooleanQuery"


@dataclass(frozen=True)
class NumericRange:
    field: str
    lo: float
    hi: float


@dataclass(frozen=True)
class GeoBox:
    box: GeoExtent


@dataclass(frozen=True)
class TimeRange:
    window: TimeExtent


@dataclass(frozen=True)
class MatchNone:
    """Sentinel query that matches nothing (degenerate keyword input)."""


BooleanQuery = Term | Phrase | All | Any_ | Not | NumericRange | GeoBox | TimeRange | MatchNone


def validate_query(q: BooleanQuery, *, _root: bool = True) -> None:
    """Structural validation; raises :class:`MalformedQuery`."""
    if isinstance(q, Not):
        if _root:
            raise MalformedQuery("Not may not be the query root")
        validate_query(q.child, _root=False)
    elif isinstance(q, (All, Any_)):
        if not q.children:
            raise MalformedQuery(f"{type(q).__name__} requires non-empty children")
        for child in q.children:
            validate_query(child, _root=False)
    elif isinstance(q, Term):
        if q.field not in TEXT_FIELDS:
            raise MalformedQuery(f"unknown text field {q.field!r}")
        if not q.token:
            raise MalformedQuery("empty term token")
    elif isinstance(q, Phrase):
        if q.field not in TEXT_FIELDS:
            raise MalformedQuery(f"unknown text field {q.field!r}")
        if not q.tokens:
            raise MalformedQuery("empty phrase")
    elif isinstance(q, NumericRange):
        if q.field not in NUMERIC_FIELDS:
            raise MalformedQuery(f"unknown numeric field {q.field!r}")
        if q.lo > q.hi:
            raise MalformedQuery("numeric range lo > hi")
    elif isinstance(q, (GeoBox, TimeRange, MatchNone)):
        pass
    else:
        raise MalformedQuery(f"unknown query node {type(q).__name__}")


def text_clause(field: str, text: str) -> BooleanQuery:
    """Term for a single token, Phrase for a multi-token string."""
    tokens = tokenize(text)
    if not tokens:
        return MatchNone()
    if len(tokens) == 1:
        return Term(field, tokens[0])
    return Phrase(field, tuple(tokens))


def keyword_query(text: str) -> BooleanQuery:
    """The Baseline tier's query: every token against every textual field.

    Degenerate input (empty or punctuation-only) maps to the MatchNone
    sentinel rather than an error.
    """
    tokens = tokenize(text)
    if not tokens:
        return MatchNone()
    clauses = tuple(Term(field, token) for token in tokens for field in TEXT_FIELDS)
    return Any_(clauses)
