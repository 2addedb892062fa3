"""Wind-rose binning: sector geometry, the one-fewer rule, count conservation."""

from __future__ import annotations

import math

import numpy as np
import pytest

from argonaut.geo import (
    BEAUFORT_EDGES,
    BEAUFORT_LABELS,
    SECTOR_LABELS,
    LabelEdgeMismatch,
    wind_rose,
)


def sector_oracle(direction: float) -> int:
    return int(math.floor(((direction + 11.25) % 360.0) / 22.5))


def category_oracle(speed: float, edges) -> int:
    for k in range(len(edges) - 2):
        if edges[k] <= speed < edges[k + 1]:
            return k
    return len(edges) - 2  # open-ended last bin


class TestLabelEdgeRule:
    def test_thirteen_edges_thirteen_labels_rejected(self):
        labels_13 = list(BEAUFORT_LABELS) + ["Hurricane (12)"]
        assert len(BEAUFORT_EDGES) == 13 and len(labels_13) == 13
        with pytest.raises(LabelEdgeMismatch) as exc_info:
            wind_rose([0.0], [1.0], edges=BEAUFORT_EDGES, labels=labels_13)
        message = str(exc_info.value)
        assert "13" in message and "one fewer" in message

    def test_correct_counts_accepted(self):
        t = wind_rose([0.0], [1.0])
        assert len(t.categories) == len(BEAUFORT_EDGES) - 1 == 12

    def test_edges_must_start_at_zero(self):
        with pytest.raises(ValueError):
            wind_rose([0.0], [1.0], edges=[1.0, 2.0], labels=["a"])

    def test_edges_must_increase(self):
        with pytest.raises(ValueError):
            wind_rose([0.0], [1.0], edges=[0.0, 2.0, 2.0], labels=["a", "b"])


class TestSectors:
    def test_north_sector_straddles_zero(self):
        # the N sector is 22.5 deg wide centered on 0: [348.75, 360) u [0, 11.25)
        t = wind_rose([0.0, 350.0], [1.0, 1.0])
        assert t.counts[0].sum() == 2
        assert t.sectors[0] == "N"

    def test_sector_centers_map_to_labels(self):
        dirs = [i * 22.5 for i in range(16)]
        t = wind_rose(dirs, [1.0] * 16)
        for i in range(16):
            assert t.counts[i].sum() == 1, SECTOR_LABELS[i]

    def test_boundary_goes_to_next_sector(self):
        # 11.25 is the first direction belonging to NNE
        t = wind_rose([11.25, 11.24], [1.0, 1.0])
        assert t.counts[1].sum() == 1 and t.counts[0].sum() == 1


class TestCounts:
    def test_random_rows_match_per_row_oracle_and_conserve(self):
        rng = np.random.default_rng(14)
        n = 1000
        dirs = rng.uniform(-20, 400, size=n)
        speeds = rng.uniform(0, 35, size=n)
        dirs[rng.choice(n, size=17, replace=False)] = np.nan
        speeds[rng.choice(n, size=13, replace=False)] = np.inf

        t = wind_rose(dirs, speeds)
        oracle = np.zeros((16, 12), dtype=int)
        excluded = 0
        for d, s in zip(dirs, speeds):
            if not (math.isfinite(d) and math.isfinite(s)) or s < 0:
                excluded += 1
                continue
            oracle[sector_oracle(d), category_oracle(s, BEAUFORT_EDGES)] += 1
        assert np.array_equal(t.counts, oracle)
        assert t.excluded == excluded
        assert t.total + t.excluded == n

    def test_speed_bins_half_open(self):
        # 0.5 is the first speed of Beaufort 1; the last bin is open-ended
        t = wind_rose([0.0, 0.0, 0.0], [0.49, 0.5, 99.0])
        assert t.counts[0, 0] == 1
        assert t.counts[0, 1] == 1
        assert t.counts[0, 11] == 1

    def test_speeds_sum_matches_valid_rows(self):
        rng = np.random.default_rng(5)
        speeds = rng.uniform(0, 30, size=200)
        dirs = rng.uniform(0, 360, size=200)
        t = wind_rose(dirs, speeds)
        assert t.total == 200
