"""Grid and matchup text fixture round-trips (NA = missing)."""

from __future__ import annotations

import math
from datetime import datetime, timedelta, timezone

import numpy as np

from argonaut.geo import Grid4D, MatchupRow, MatchupTable, ObsPoint
from argonaut.geo.io import dump_grid, dump_matchup, load_grid, load_matchup

UTC = timezone.utc
T0 = datetime(2013, 6, 1, tzinfo=UTC)


def test_grid_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    values = rng.normal(size=(3, 2, 4, 5))
    values[1, 0, 2, 2] = np.nan
    grid = Grid4D([T0 + timedelta(days=i) for i in range(3)],
                  [0.5, 10.0], [-2.0, -1.0, 0.0, 1.0], [5.0, 6.0, 7.0, 8.0, 9.0],
                  values, units="degC")
    path = tmp_path / "grid.txt"
    dump_grid(grid, path)
    back = load_grid(path)
    assert back.times == grid.times
    assert back.units == "degC"
    np.testing.assert_array_equal(back.depths_m, grid.depths_m)
    nan_mask = np.isnan(grid.values)
    assert np.array_equal(np.isnan(back.values), nan_mask)
    np.testing.assert_array_equal(back.values[~nan_mask], grid.values[~nan_mask])


def test_grid_value_count_validated(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text(
        "units: x\n"
        f"times: {T0.isoformat()}\n"
        "depths_m: 0.0\n"
        "lats: 0.0\n"
        "lons: 0.0 1.0\n"
        "values:\n"
        "1.0\n",
        encoding="utf-8",
    )
    try:
        load_grid(path)
    except ValueError as exc:
        assert "value block" in str(exc)
    else:
        raise AssertionError("expected ValueError")


def test_matchup_round_trip(tmp_path):
    rows = (
        MatchupRow(obs=ObsPoint(T0, lat=1.0, lon=2.0, depth_m=3.0, value=4.5), model=4.7),
        MatchupRow(obs=ObsPoint(T0 + timedelta(hours=1), lat=1.5, lon=2.5, depth_m=0.0,
                                value=float("nan")), model=float("nan")),
    )
    table = MatchupTable(rows=rows)
    path = tmp_path / "matchup.csv"
    dump_matchup(table, path)

    text = path.read_text(encoding="utf-8")
    assert text.splitlines()[0] == "time,lat,lon,depth_m,obs,model,valid"
    assert "NA" in text

    back = load_matchup(path)
    assert len(back.rows) == 2
    assert back.rows[0].model == 4.7
    assert back.rows[0].obs.value == 4.5
    assert math.isnan(back.rows[1].model)
    assert back.valid_fraction == 0.5
