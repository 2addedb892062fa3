"""The compiled extension and the numpy fallback must agree everywhere."""

from __future__ import annotations

import numpy as np
import pytest

from argonaut.geo import kernels

IMPLS = kernels.available_implementations()
IDS = [name for name, _ in IMPLS]


@pytest.fixture(params=IMPLS, ids=IDS)
def impl(request):
    return request.param[1]


def test_both_implementations_present_when_extension_built():
    if kernels.COMPILED:
        assert dict(IMPLS).keys() == {"python", "compiled"}


class TestParity:
    def setup_method(self):
        rng = np.random.default_rng(100)
        self.axis = np.sort(rng.uniform(-50, 50, size=40))
        self.queries = rng.uniform(-60, 60, size=500)

        self.t = np.sort(rng.uniform(0, 100, size=6))
        self.z = np.sort(rng.uniform(0, 500, size=5))
        self.y = np.sort(rng.uniform(-80, 80, size=7))
        self.x = np.sort(rng.uniform(-170, 170, size=8))
        self.values = rng.normal(size=(6, 5, 7, 8))
        self.values[rng.random(self.values.shape) < 0.05] = np.nan
        self.qt = rng.uniform(-5, 105, size=400)
        self.qz = rng.uniform(-5, 505, size=400)
        self.qy = rng.uniform(-85, 85, size=400)
        self.qx = rng.uniform(-175, 175, size=400)

    def test_nearest_index_identical(self):
        results = [m.nearest_index(self.axis, self.queries) for _, m in IMPLS]
        for r in results[1:]:
            assert np.array_equal(results[0], r)

    def test_interp4d_identical(self):
        results = [
            m.interp4d(self.t, self.z, self.y, self.x, self.values,
                       self.qt, self.qz, self.qy, self.qx)
            for _, m in IMPLS
        ]
        for r in results[1:]:
            nan0, nan1 = np.isnan(results[0]), np.isnan(r)
            assert np.array_equal(nan0, nan1)
            np.testing.assert_allclose(results[0][~nan0], r[~nan1], rtol=0, atol=1e-12)

    def test_haversine_identical(self):
        rng = np.random.default_rng(2)
        lat1 = rng.uniform(-90, 90, size=200)
        lon1 = rng.uniform(-180, 180, size=200)
        lat2 = rng.uniform(-90, 90, size=200)
        lon2 = rng.uniform(-180, 180, size=200)
        results = [m.haversine_km(lat1, lon1, lat2, lon2) for _, m in IMPLS]
        for r in results[1:]:
            np.testing.assert_allclose(results[0], r, rtol=1e-12)

    def test_haversine_nearest_identical(self):
        rng = np.random.default_rng(3)
        cl = rng.uniform(-90, 90, size=300)
        cn = rng.uniform(-180, 180, size=300)
        for _ in range(50):
            lat, lon = float(rng.uniform(-90, 90)), float(rng.uniform(-180, 180))
            picks = {m.haversine_nearest(lat, lon, cl, cn) for _, m in IMPLS}
            assert len(picks) == 1

    def test_windrose_identical(self):
        rng = np.random.default_rng(4)
        dirs = rng.uniform(-10, 370, size=2000)
        speeds = rng.uniform(-1, 40, size=2000)
        dirs[:20] = np.nan
        edges = np.array([0.0, 0.5, 1.6, 3.4, 5.5, 8.0, np.inf])
        results = [m.windrose_count(dirs, speeds, edges, 6) for _, m in IMPLS]
        for counts, excluded in results[1:]:
            assert np.array_equal(results[0][0], counts)
            assert results[0][1] == excluded


def test_selected_implementation_reports_name(impl):
    assert impl.IMPLEMENTATION in ("python", "compiled")
