"""Metadata model, feature flags, and index-vs-oracle agreement."""

from __future__ import annotations

from datetime import datetime, timezone

import numpy as np
import pytest

from argonaut.catalog import (
    All,
    Any_,
    DatasetMetadata,
    DepthExtent,
    DuplicateId,
    CorpusParseError,
    GeoBox,
    GeoExtent,
    InMemoryCatalog,
    MalformedQuery,
    MatchNone,
    Not,
    Parameter,
    Phrase,
    Term,
    TimeExtent,
    TimeRange,
    derive_feature_flags,
    keyword_query,
    load_corpus,
    record_from_json,
    record_to_json,
    tokenize,
    validate_query,
)
from oracle_search import brute_force_ids, random_corpus, random_query

UTC = timezone.utc
GIB = 2**30


def rec(id="d1", title="weddell microplastic", **kw) -> DatasetMetadata:
    return DatasetMetadata(id=id, title=title, **kw)


class TestFeatureFlags:
    def test_fully_featured_gridded_record(self):
        meta = rec(
            layout="gridded",
            geo=GeoExtent(-78, -60, -57, 12),
            depth=DepthExtent(0.0, 500.0),
            time=TimeExtent(datetime(2018, 1, 1, tzinfo=UTC), datetime(2019, 2, 1, tzinfo=UTC)),
            size_bytes=2 * GIB,
        )
        flags = derive_feature_flags(meta, size_threshold_bytes=GIB)
        assert flags.has_geo and flags.is_gridded and flags.has_depth_axis
        assert flags.is_large and flags.has_time

    def test_bare_flat_table(self):
        flags = derive_feature_flags(rec(size_bytes=1024), size_threshold_bytes=GIB)
        assert not any(
            [flags.has_geo, flags.is_gridded, flags.has_depth_axis, flags.is_large,
             flags.has_time]
        )

    def test_size_exactly_at_threshold_is_not_large(self):
        assert not derive_feature_flags(rec(size_bytes=GIB), GIB).is_large
        assert derive_feature_flags(rec(size_bytes=GIB + 1), GIB).is_large

    def test_pure_and_total(self):
        meta = rec(size_bytes=5)
        assert derive_feature_flags(meta) == derive_feature_flags(meta)


class TestIngest:
    def test_round_trip(self):
        cat = InMemoryCatalog()
        meta = rec(abstract="trawl survey", parameters=(Parameter("abundance", "items/km2"),))
        cat.ingest(meta)
        assert cat.get("d1") == meta

    def test_shared_tokens_both_retrievable(self):
        cat = InMemoryCatalog()
        cat.ingest(rec(id="a", title="weddell currents"))
        cat.ingest(rec(id="b", title="weddell plankton"))
        hits = cat.execute_query(Term("title", "weddell"), limit=10)
        assert {h.dataset_id for h in hits} == {"a", "b"}

    def test_duplicate_id_rejected(self):
        cat = InMemoryCatalog()
        cat.ingest(rec())
        with pytest.raises(DuplicateId):
            cat.ingest(rec())


class TestExecuteQuery:
    def setup_method(self):
        self.cat = InMemoryCatalog()
        self.cat.ingest(rec(id="w", title="weddell microplastic"))
        self.cat.ingest(rec(id="o", title="arctic mooring"))

    def test_single_term(self):
        hits = self.cat.execute_query(Term("title", "weddell"), limit=5)
        assert [h.dataset_id for h in hits] == ["w"]
        assert hits[0].matched_fields == {"title"}
        assert hits[0].score > 0

    def test_negation_excludes(self):
        q = All((Term("title", "microplastic"), Not(Term("title", "weddell"))))
        assert self.cat.execute_query(q, limit=5) == []

    def test_not_cannot_be_root(self):
        with pytest.raises(MalformedQuery):
            self.cat.execute_query(Not(Term("title", "weddell")), limit=5)

    def test_empty_boolean_children_rejected(self):
        with pytest.raises(MalformedQuery):
            self.cat.execute_query(All(()), limit=5)

    def test_phrase_requires_adjacency(self):
        cat = InMemoryCatalog()
        cat.ingest(rec(id="x", title="conductivity temperature depth profile"))
        cat.ingest(rec(id="y", title="temperature and conductivity"))
        hits = cat.execute_query(Phrase("title", ("conductivity", "temperature")), limit=5)
        assert [h.dataset_id for h in hits] == ["x"]

    def test_structural_filters_are_hard(self):
        cat = InMemoryCatalog()
        cat.ingest(rec(id="in", title="box survey", geo=GeoExtent(10, 20, 10, 20)))
        cat.ingest(rec(id="out", title="box survey", geo=GeoExtent(50, 60, 50, 60)))
        cat.ingest(rec(id="nogeo", title="box survey"))
        q = All((Term("title", "survey"), GeoBox(GeoExtent(0, 30, 0, 30))))
        assert [h.dataset_id for h in cat.execute_query(q, limit=5)] == ["in"]

    def test_geobox_intersection_counts(self):
        cat = InMemoryCatalog()
        cat.ingest(rec(id="edge", geo=GeoExtent(0, 10, 0, 10)))
        q = GeoBox(GeoExtent(10, 20, 10, 20))  # touches at a corner
        assert [h.dataset_id for h in cat.execute_query(q, limit=5)] == ["edge"]

    def test_time_overlap(self):
        cat = InMemoryCatalog()
        cat.ingest(rec(id="t", time=TimeExtent(datetime(2013, 6, 1, tzinfo=UTC),
                                               datetime(2013, 9, 30, tzinfo=UTC))))
        inside = TimeRange(TimeExtent(datetime(2013, 7, 1, tzinfo=UTC),
                                      datetime(2013, 8, 1, tzinfo=UTC)))
        outside = TimeRange(TimeExtent(datetime(2014, 1, 1, tzinfo=UTC),
                                       datetime(2014, 2, 1, tzinfo=UTC)))
        assert cat.execute_query(inside, limit=5)
        assert not cat.execute_query(outside, limit=5)

    def test_limit_and_ordering(self):
        cat = InMemoryCatalog()
        for i in range(10):
            cat.ingest(rec(id=f"id{i}", title="common token"))
        hits = cat.execute_query(Term("title", "common"), limit=3)
        assert len(hits) == 3
        # identical documents score identically; ties break by id ascending
        assert [h.dataset_id for h in hits] == ["id0", "id1", "id2"]
        assert len({h.score for h in hits}) == 1

    def test_scores_nonnegative(self):
        rng = np.random.default_rng(0)
        records = random_corpus(rng, 50)
        cat = InMemoryCatalog()
        cat.ingest_all(records)
        for _ in range(20):
            q = random_query(rng)
            for h in cat.execute_query(q, limit=50):
                assert h.score >= 0.0


class TestIndexMatchesOracle:
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_random_queries_match_bruteforce(self, seed):
        rng = np.random.default_rng(seed)
        records = random_corpus(rng, int(rng.integers(20, 200)))
        cat = InMemoryCatalog()
        cat.ingest_all(records)
        for _ in range(30):
            q = random_query(rng, depth=int(rng.integers(0, 4)))
            try:
                validate_query(q)
            except MalformedQuery:
                continue
            got = {h.dataset_id for h in cat.execute_query(q, limit=len(records))}
            assert got == brute_force_ids(records, q)

    def test_any_query_order_matches_scan_under_tiebreak(self):
        rng = np.random.default_rng(99)
        records = random_corpus(rng, 20)
        cat = InMemoryCatalog()
        cat.ingest_all(records)
        q = Any_((Term("title", "weddell"), Term("title", "ctd"), Term("abstract", "mooring")))
        hits = cat.execute_query(q, limit=20)
        assert {h.dataset_id for h in hits} == brute_force_ids(records, q)
        assert [(h.dataset_id,) for h in hits] == sorted(
            [(h.dataset_id,) for h in hits],
            key=lambda t: (-next(x.score for x in hits if x.dataset_id == t[0]), t[0]),
        )

    def test_conjoined_filter_is_monotone(self):
        rng = np.random.default_rng(5)
        records = random_corpus(rng, 100)
        cat = InMemoryCatalog()
        cat.ingest_all(records)
        base = Any_((Term("title", "ice"), Term("title", "current")))
        filtered = All((base, NumericRangeFactory()))
        base_ids = {h.dataset_id for h in cat.execute_query(base, limit=100)}
        filtered_ids = {h.dataset_id for h in cat.execute_query(filtered, limit=100)}
        assert filtered_ids <= base_ids


def NumericRangeFactory():
    from argonaut.catalog import NumericRange

    return NumericRange("size_bytes", 0, GIB)


class TestKeywordQuery:
    def test_tokens_times_fields(self):
        q = keyword_query("weddell sea winter")
        assert isinstance(q, Any_)
        assert len(q.children) == 3 * 5  # 3 tokens x 5 textual fields

    def test_empty_input_matches_nothing(self):
        assert keyword_query("") == MatchNone()
        cat = InMemoryCatalog()
        cat.ingest(rec())
        assert cat.execute_query(keyword_query(""), limit=5) == []

    def test_punctuation_only(self):
        assert keyword_query("?!, --") == MatchNone()

    def test_tokenize_rules(self):
        assert tokenize("Weddell-Sea CTD_2013") == ["weddell", "sea", "ctd", "2013"]


class TestCorpusFixture:
    def test_round_trip(self, tmp_path):
        import json

        meta = rec(
            abstract="abstract text",
            parameters=(Parameter("salinity", "psu"),),
            geo=GeoExtent(-70, -60, -50, 10),
            time=TimeExtent(datetime(2013, 6, 1, tzinfo=UTC), datetime(2013, 9, 1, tzinfo=UTC)),
            depth=DepthExtent(0, 200),
            campaign="ANT-XXIX/6",
            platform="Polarstern",
            layout="gridded",
            size_bytes=123,
        )
        path = tmp_path / "corpus.jsonl"
        path.write_text(json.dumps(record_to_json(meta)) + "\n", encoding="utf-8")
        [back] = load_corpus(path)
        assert back == meta

    def test_unknown_field_rejected_with_line(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "x", "title": "t"}\n{"id": "y", "title": "t", "zzz": 1}\n',
                        encoding="utf-8")
        with pytest.raises(CorpusParseError) as exc_info:
            load_corpus(path)
        assert exc_info.value.lineno == 2

    def test_bad_json_rejected(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text("{not json\n", encoding="utf-8")
        with pytest.raises(CorpusParseError):
            load_corpus(path)

    def test_validation_applies(self):
        with pytest.raises(CorpusParseError):
            record_from_json({"id": "x", "title": "t", "geo": {"lat_min": 50, "lat_max": 10,
                                                               "lon_min": 0, "lon_max": 1}})
