"""Co-location, interpolation and domain-expansion tests with brute-force oracles."""

from __future__ import annotations

import math
from datetime import datetime, timedelta, timezone

import numpy as np
import pytest

from argonaut.geo import (
    BBox,
    DateNotInGrid,
    EmptyInput,
    GeoPoint,
    Grid4D,
    ObsPoint,
    StillMissing,
    bounding_box,
    colocate_nearest,
    edge_recovery,
    expand_bbox,
    haversine_km,
    haversine_nearest,
    interp_4d,
    nearest_grid_point,
    time_mean,
)

UTC = timezone.utc
T0 = datetime(2019, 9, 20, tzinfo=UTC)


def day(i: int) -> datetime:
    return T0 + timedelta(days=i)


def make_grid(nt=4, nz=3, ny=5, nx=6, fill=None, seed=0):
    rng = np.random.default_rng(seed)
    times = [day(i) for i in range(nt)]
    depths = np.linspace(0.0, 100.0, nz)
    lats = np.linspace(-10.0, 10.0, ny)
    lons = np.linspace(0.0, 25.0, nx)
    if fill is None:
        values = rng.normal(size=(nt, nz, ny, nx))
    else:
        values = np.full((nt, nz, ny, nx), fill, dtype=float)
    return Grid4D(times, depths, lats, lons, values)


class TestBoundingBox:
    def test_single_point_degenerate(self):
        p = ObsPoint(day(0), lat=5.0, lon=6.0, depth_m=7.0, value=1.0)
        b = bounding_box([p])
        assert (b.lat_min, b.lat_max) == (5.0, 5.0)
        assert (b.lon_min, b.lon_max) == (6.0, 6.0)
        assert b.time_start == b.time_end == day(0)
        assert (b.depth_min_m, b.depth_max_m) == (7.0, 7.0)

    def test_two_points_componentwise(self):
        a = ObsPoint(day(0), lat=-5.0, lon=10.0, depth_m=0.0, value=1.0)
        b = ObsPoint(day(3), lat=5.0, lon=2.0, depth_m=50.0, value=1.0)
        box = bounding_box([a, b])
        assert (box.lat_min, box.lat_max) == (-5.0, 5.0)
        assert (box.lon_min, box.lon_max) == (2.0, 10.0)
        assert (box.time_start, box.time_end) == (day(0), day(3))

    def test_random_points_match_scan_oracle(self):
        rng = np.random.default_rng(42)
        pts = [
            ObsPoint(day(int(rng.integers(0, 50))), lat=float(rng.uniform(-80, 80)),
                     lon=float(rng.uniform(-170, 170)), depth_m=float(rng.uniform(0, 500)),
                     value=float(rng.normal()))
            for _ in range(100)
        ]
        box = bounding_box(pts)
        # independent linear scan
        assert box.lat_min == min(p.lat for p in pts)
        assert box.lat_max == max(p.lat for p in pts)
        assert box.lon_min == min(p.lon for p in pts)
        assert box.lon_max == max(p.lon for p in pts)
        assert box.time_start == min(p.time for p in pts)
        assert box.time_end == max(p.time for p in pts)
        assert box.depth_min_m == min(p.depth_m for p in pts)
        assert box.depth_max_m == max(p.depth_m for p in pts)

    def test_empty_raises(self):
        with pytest.raises(EmptyInput):
            bounding_box([])


class TestExpandBbox:
    def base(self, lat_min=69.68, lat_max=86.60, lon_min=18.99, lon_max=138.14):
        return BBox(lat_min, lat_max, lon_min, lon_max, day(0), day(1), 0.0, 10.0)

    def test_zero_pad_identity(self):
        b = self.base()
        assert expand_bbox(b, 0.0) == b

    def test_mosaic_domain_expansion(self):
        # exact: grow 0.3 deg per side; the published rounded corners must
        # agree within 0.05 deg
        out = expand_bbox(self.base(), 0.3)
        assert out.lat_min == pytest.approx(69.38, abs=1e-12)
        assert out.lat_max == pytest.approx(86.90, abs=1e-12)
        assert out.lon_min == pytest.approx(18.69, abs=1e-12)
        assert out.lon_max == pytest.approx(138.44, abs=1e-12)
        for exact, rounded in [(out.lat_min, 69.4), (out.lat_max, 86.9),
                               (out.lon_min, 18.7), (out.lon_max, 138.45)]:
            assert abs(exact - rounded) <= 0.05

    def test_clamped_at_pole(self):
        b = self.base(lat_max=89.9)
        assert expand_bbox(b, 0.3).lat_max == 90.0

    def test_monotone_contains_input(self):
        b = self.base()
        out = expand_bbox(b, 1.7)
        assert out.contains_box(b)

    def test_time_and_depth_unchanged(self):
        b = self.base()
        out = expand_bbox(b, 0.3)
        assert (out.time_start, out.time_end) == (b.time_start, b.time_end)
        assert (out.depth_min_m, out.depth_max_m) == (b.depth_min_m, b.depth_max_m)


class TestHaversine:
    def test_coincident_points(self):
        p = GeoPoint(12.0, 34.0)
        assert haversine_km(p, p) == 0.0

    def test_antipodal_half_circumference(self):
        d = haversine_km(GeoPoint(0.0, 0.0), GeoPoint(0.0, 180.0))
        assert d == pytest.approx(math.pi * 6371.0, rel=1e-12)

    def test_one_degree_equatorial_arc(self):
        d = haversine_km(GeoPoint(0.0, 0.0), GeoPoint(0.0, 1.0))
        assert d == pytest.approx(6371.0 * math.pi / 180.0, rel=1e-12)

    def test_symmetry(self):
        a, b = GeoPoint(10.0, 20.0), GeoPoint(-30.0, 55.0)
        assert haversine_km(a, b) == pytest.approx(haversine_km(b, a), rel=1e-14)


class TestHaversineNearest:
    def test_exact_candidate(self):
        cands = [GeoPoint(0.0, 0.0), GeoPoint(5.0, 5.0), GeoPoint(10.0, 10.0)]
        assert haversine_nearest(GeoPoint(5.0, 5.0), cands) == 1

    def test_equidistant_ties_to_lower_index(self):
        cands = [GeoPoint(0.0, 1.0), GeoPoint(0.0, -1.0)]
        assert haversine_nearest(GeoPoint(0.0, 0.0), cands) == 0

    def test_random_against_bruteforce(self):
        rng = np.random.default_rng(7)
        cands = [GeoPoint(float(rng.uniform(-89, 89)), float(rng.uniform(-179, 179)))
                 for _ in range(40)]
        for _ in range(200):
            p = GeoPoint(float(rng.uniform(-89, 89)), float(rng.uniform(-179, 179)))
            got = haversine_nearest(p, cands)
            dists = [haversine_km(p, c) for c in cands]
            best = min(range(len(cands)), key=lambda i: (dists[i], i))
            assert got == best

    def test_empty_raises(self):
        with pytest.raises(EmptyInput):
            haversine_nearest(GeoPoint(0, 0), [])


def brute_nearest(axis: np.ndarray, q: float) -> int:
    best, bestd = 0, abs(axis[0] - q)
    for i in range(1, axis.size):
        d = abs(axis[i] - q)
        if d < bestd:
            best, bestd = i, d
    return best


class TestNearestGridPoint:
    def test_exact_node(self):
        grid = make_grid()
        obs = ObsPoint(day(2), lat=float(grid.lats[3]), lon=float(grid.lons[4]),
                       depth_m=float(grid.depths_m[1]), value=0.0)
        assert nearest_grid_point(obs, grid) == (2, 1, 3, 4)

    def test_depth_midpoint_ties_to_lower(self):
        grid = make_grid()  # depths 0, 50, 100
        obs = ObsPoint(day(0), lat=0.0, lon=0.0, depth_m=25.0, value=0.0)
        assert nearest_grid_point(obs, grid).iz == 0

    def test_date_normalized_to_day(self):
        grid = make_grid()
        obs = ObsPoint(day(1) + timedelta(hours=17, minutes=30), lat=0.0, lon=0.0,
                       depth_m=0.0, value=0.0)
        assert nearest_grid_point(obs, grid).it == 1

    def test_date_not_in_grid(self):
        grid = make_grid(nt=2)
        obs = ObsPoint(day(9), lat=0.0, lon=0.0, depth_m=0.0, value=0.0)
        with pytest.raises(DateNotInGrid):
            nearest_grid_point(obs, grid)

    def test_random_obs_match_bruteforce(self):
        rng = np.random.default_rng(3)
        # random strictly monotone axes, one of them descending
        depths = np.sort(rng.uniform(0, 400, size=9))
        lats = np.sort(rng.uniform(-60, 60, size=11))[::-1].copy()  # descending
        lons = np.sort(rng.uniform(-100, 100, size=13))
        values = rng.normal(size=(5, 9, 11, 13))
        grid = Grid4D([day(i) for i in range(5)], depths, lats, lons, values)
        for _ in range(500):
            obs = ObsPoint(
                day(int(rng.integers(0, 5))),
                lat=float(rng.uniform(-65, 65)), lon=float(rng.uniform(-105, 105)),
                depth_m=float(rng.uniform(0, 420)), value=0.0,
            )
            it, iz, iy, ix = nearest_grid_point(obs, grid)
            assert iz == brute_nearest(grid.depths_m, obs.depth_m)
            assert iy == brute_nearest(grid.lats, obs.lat)
            assert ix == brute_nearest(grid.lons, obs.lon)
            assert grid.times[it].date() == obs.time.date()


class TestColocateNearest:
    def test_all_on_grid_full_valid_fraction(self):
        grid = make_grid(fill=3.5)
        obs = [
            ObsPoint(day(i % 4), lat=2.0, lon=3.0, depth_m=10.0, value=1.0)
            for i in range(10)
        ]
        table = colocate_nearest(obs, grid)
        assert table.valid_fraction == 1.0
        assert all(r.model == 3.5 for r in table.rows)

    def test_date_outside_grid_goes_missing(self):
        grid = make_grid(nt=2, fill=1.0)
        obs = [
            ObsPoint(day(0), lat=0.0, lon=0.0, depth_m=0.0, value=1.0),
            ObsPoint(day(30), lat=0.0, lon=0.0, depth_m=0.0, value=1.0),
        ]
        table = colocate_nearest(obs, grid)
        assert table.rows[0].valid and not table.rows[1].valid
        assert table.valid_fraction == 0.5

    def test_values_equal_index_oracle(self):
        grid = make_grid(seed=11)
        rng = np.random.default_rng(5)
        obs = [
            ObsPoint(day(int(rng.integers(0, 4))), lat=float(rng.uniform(-10, 10)),
                     lon=float(rng.uniform(0, 25)), depth_m=float(rng.uniform(0, 100)),
                     value=float(rng.normal()))
            for _ in range(50)
        ]
        table = colocate_nearest(obs, grid)
        for o, row in zip(obs, table.rows):
            idx = nearest_grid_point(o, grid)
            assert row.model == grid.values[idx]

    def test_sentinel_cell_goes_missing(self):
        grid = make_grid(nt=1, nz=1, ny=2, nx=2, fill=1.0)
        values = grid.values.copy()
        values[0, 0, 0, 0] = np.nan
        grid = Grid4D(grid.times, grid.depths_m, grid.lats, grid.lons, values)
        hit = ObsPoint(day(0), lat=float(grid.lats[0]), lon=float(grid.lons[0]),
                       depth_m=0.0, value=1.0)
        miss = ObsPoint(day(0), lat=float(grid.lats[1]), lon=float(grid.lons[1]),
                        depth_m=0.0, value=1.0)
        table = colocate_nearest([hit, miss], grid)
        assert not table.rows[0].valid
        assert table.rows[1].valid


class TestInterp4d:
    def test_node_exactness(self):
        grid = make_grid(seed=2)
        track = [
            ObsPoint(grid.times[it], lat=float(grid.lats[iy]), lon=float(grid.lons[ix]),
                     depth_m=float(grid.depths_m[iz]), value=0.0)
            for it, iz, iy, ix in [(0, 0, 0, 0), (3, 2, 4, 5), (1, 1, 2, 3)]
        ]
        out = interp_4d(track, grid)
        expected = [grid.values[0, 0, 0, 0], grid.values[3, 2, 4, 5], grid.values[1, 1, 2, 3]]
        assert list(out) == expected

    def test_affine_field_reproduced(self):
        # multilinear interpolation is exact on affine functions of the axes
        nt, nz, ny, nx = 5, 4, 6, 7
        times = [day(i) for i in range(nt)]
        depths = np.linspace(0, 30, nz)
        lats = np.linspace(-5, 5, ny)
        lons = np.linspace(10, 20, nx)

        def f(tdays, z, y, x):
            return 2.0 * tdays + 3.0 * z - y + 0.5 * x

        tdays = np.array([(t - T0).total_seconds() / 86400.0 for t in times])
        values = f(tdays[:, None, None, None], depths[None, :, None, None],
                   lats[None, None, :, None], lons[None, None, None, :])
        grid = Grid4D(times, depths, lats, lons, values)

        rng = np.random.default_rng(9)
        track = []
        expected = []
        for _ in range(100):
            td = float(rng.uniform(0, nt - 1))
            z = float(rng.uniform(0, 30))
            y = float(rng.uniform(-5, 5))
            x = float(rng.uniform(10, 20))
            track.append(ObsPoint(T0 + timedelta(days=td), lat=y, lon=x, depth_m=z, value=0.0))
            expected.append(f(td, z, y, x))
        out = interp_4d(track, grid)
        assert np.max(np.abs(out - np.array(expected))) < 1e-9

    def test_outside_hull_missing(self):
        grid = make_grid(fill=1.0)
        outside = ObsPoint(day(0), lat=50.0, lon=3.0, depth_m=0.0, value=0.0)
        inside = ObsPoint(day(0), lat=0.0, lon=3.0, depth_m=0.0, value=0.0)
        out = interp_4d([outside, inside], grid)
        assert math.isnan(out[0]) and out[1] == 1.0

    def test_nan_corner_yields_missing_only_when_touched(self):
        grid = make_grid(nt=1, nz=1, ny=3, nx=3, fill=2.0)
        values = grid.values.copy()
        values[0, 0, 2, 2] = np.nan
        grid = Grid4D(grid.times, grid.depths_m, grid.lats, grid.lons, values)
        near_nan = ObsPoint(day(0), lat=float(grid.lats[1] * 0.3 + grid.lats[2] * 0.7),
                            lon=float(grid.lons[1] * 0.3 + grid.lons[2] * 0.7),
                            depth_m=0.0, value=0.0)
        on_nan_free_node = ObsPoint(day(0), lat=float(grid.lats[2]), lon=float(grid.lons[1]),
                                    depth_m=0.0, value=0.0)
        out = interp_4d([near_nan, on_nan_free_node], grid)
        assert math.isnan(out[0])
        assert out[1] == 2.0  # zero-weight corners do not participate

    def test_descending_axis_equivalent(self):
        grid = make_grid(seed=21)
        flipped = Grid4D(
            grid.times, grid.depths_m, grid.lats[::-1].copy(), grid.lons,
            np.flip(grid.values, axis=2).copy(),
        )
        rng = np.random.default_rng(1)
        track = [
            ObsPoint(day(int(rng.integers(0, 4))), lat=float(rng.uniform(-10, 10)),
                     lon=float(rng.uniform(0, 25)), depth_m=float(rng.uniform(0, 100)),
                     value=0.0)
            for _ in range(50)
        ]
        np.testing.assert_allclose(interp_4d(track, grid), interp_4d(track, flipped),
                                   rtol=0, atol=1e-12)


def make_mosaic_track():
    """2,013 hourly positions; exactly 83 graze past the provider's grid edge."""
    rng = np.random.default_rng(83)
    track = []
    for i in range(83):
        track.append(ObsPoint(T0 + timedelta(hours=i), lat=float(rng.uniform(69.68, 69.745)),
                              lon=float(rng.uniform(20.0, 137.0)), depth_m=0.0, value=0.0))
    for i in range(2013 - 83):
        track.append(ObsPoint(T0 + timedelta(hours=83 + i),
                              lat=float(rng.uniform(69.80, 86.45)),
                              lon=float(rng.uniform(19.05, 137.95)), depth_m=0.0, value=0.0))
    # pin the exact extremes so the provider grid is predictable
    track[83] = ObsPoint(T0, lat=86.5, lon=138.0, depth_m=0.0, value=0.0)
    track[84] = ObsPoint(T0, lat=69.75, lon=19.0, depth_m=0.0, value=0.0)
    return track


def snapped_grid_provider(box: BBox) -> Grid4D:
    """Grid whose lat/lon axes snap inward to 0.25-degree multiples, the way a
    remote archive subsets a fixed global grid."""
    lat0 = math.ceil(box.lat_min / 0.25) * 0.25
    lon0 = math.ceil(box.lon_min / 0.25) * 0.25
    lats = np.arange(lat0, box.lat_max + 1e-9, 0.25)
    lons = np.arange(lon0, box.lon_max + 1e-9, 0.25)
    n_days = (box.time_end.date() - box.time_start.date()).days + 2  # cover the last partial day
    times = [datetime.combine(box.time_start.date(), datetime.min.time(), tzinfo=UTC)
             + timedelta(days=i) for i in range(n_days)]
    values = np.full((len(times), 1, lats.size, lons.size), 7.25)
    return Grid4D(times, np.array([0.0]), lats, lons, values)


class TestEdgeRecovery:
    def test_no_missing_single_fetch(self):
        calls = []

        def provider(box):
            calls.append(box)
            return snapped_grid_provider(expand_bbox(box, 1.0))

        track = make_mosaic_track()
        values, report = edge_recovery(track, provider)
        assert len(calls) == 1
        assert (report.first_missing_count, report.final_missing_count) == (0, 0)
        assert not np.any(np.isnan(values))

    def test_edge_effect_recovered_by_expansion(self):
        track = make_mosaic_track()
        first = interp_4d(track, snapped_grid_provider(bounding_box(track)))
        assert int(np.isnan(first).sum()) == 83

        values, report = edge_recovery(track, snapped_grid_provider, pad_deg=0.3)
        assert report.first_missing_count == 83
        assert report.final_missing_count == 0
        assert not np.any(np.isnan(values))

    def test_still_missing_raises(self):
        def stingy_provider(box):
            clipped = BBox(72.0, 80.0, 30.0, 100.0, box.time_start, box.time_end,
                           box.depth_min_m, box.depth_max_m)
            return snapped_grid_provider(clipped)

        with pytest.raises(StillMissing) as exc_info:
            edge_recovery(make_mosaic_track(), stingy_provider)
        assert exc_info.value.report.final_missing_count > 0


class TestTimeMean:
    def test_constant_field_is_identity(self):
        grid = make_grid(fill=4.25)
        out = time_mean(grid)
        assert np.all(out.values == 4.25)

    def test_missing_skipped(self):
        times = [day(0), day(1), day(2)]
        values = np.array([1.0, np.nan, 3.0]).reshape(3, 1, 1, 1)
        grid = Grid4D(times, [0.0], [0.0], [0.0], values)
        assert time_mean(grid).values[0, 0, 0] == 2.0

    def test_all_missing_cell_stays_missing(self):
        values = np.full((2, 1, 1, 1), np.nan)
        grid = Grid4D([day(0), day(1)], [0.0], [0.0], [0.0], values)
        assert math.isnan(time_mean(grid).values[0, 0, 0])

    def test_random_grid_matches_per_cell_oracle(self):
        grid = make_grid(seed=17)
        values = grid.values.copy()
        values[1, 2, 3, 4] = np.nan
        grid = Grid4D(grid.times, grid.depths_m, grid.lats, grid.lons, values)
        out = time_mean(grid)
        for iz in range(values.shape[1]):
            for iy in range(values.shape[2]):
                for ix in range(values.shape[3]):
                    col = values[:, iz, iy, ix]
                    col = col[~np.isnan(col)]
                    expected = col.mean() if col.size else float("nan")
                    got = out.values[iz, iy, ix]
                    if math.isnan(expected):
                        assert math.isnan(got)
                    else:
                        assert got == pytest.approx(expected, rel=1e-12)
