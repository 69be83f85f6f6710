import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcsep import regions
from bcsep.regions import contains_scaled, min_scale, oracle_min_scale, polygon


def _brute_support(points, lam):
    pts = np.vstack([np.zeros((1, 2)), np.asarray(points, dtype=float)])
    return max(lam * x + (1 - lam) * y for x, y in pts)


point_sets = st.lists(
    st.tuples(st.floats(0.01, 2.0), st.floats(0.01, 2.0)), min_size=1, max_size=6)


def test_rectangle_support():
    r = regions.rectangle(2.0, 1.0)
    assert r.support(0.5) == pytest.approx(1.5)
    assert r.support(1.0) == pytest.approx(2.0)
    assert r.support(0.0) == pytest.approx(1.0)
    assert r.corners == pytest.approx((2.0, 1.0))


@given(point_sets, st.floats(0.0, 1.0))
def test_polygon_support_matches_brute_force(pts, lam):
    assert polygon(pts).support(lam) == pytest.approx(_brute_support(pts, lam), abs=1e-12)


def test_parametric_support_refines_beyond_grid():
    # quarter circle: h(lam) = sqrt(lam^2 + (1-lam)^2)
    r = regions.from_parametric(np.cos, np.sin, np.linspace(0, math.pi / 2, 17))
    lam = np.linspace(0, 1, 101)
    assert np.max(np.abs(r.support(lam) - np.hypot(lam, 1 - lam))) < 1e-12


def test_union_and_mirror():
    u = regions.union(regions.rectangle(1.0, 0.2), regions.rectangle(0.2, 1.0))
    assert u.support(0.5) == pytest.approx(0.6)
    m = regions.rectangle(2.0, 1.0).mirrored()
    assert m.corners == pytest.approx((1.0, 2.0))


@given(point_sets, st.floats(0.1, 5.0))
@settings(max_examples=40)
def test_min_scale_of_scaled_copy(pts, k):
    a = polygon(pts)
    assert min_scale(a.scaled(k), a) == pytest.approx(k, rel=1e-9)


@given(point_sets, point_sets)
@settings(max_examples=30, deadline=None)
def test_min_scale_is_tight_and_matches_oracle(p, q):
    a, b = polygon(p), polygon(q)
    k = min_scale(a, b)
    assert contains_scaled(a, b, k)
    assert not contains_scaled(a, b, k * (1 - 1e-6) - 1e-8)
    assert k == pytest.approx(oracle_min_scale(a, b, n=4000), abs=1e-3 * max(1.0, k))


def test_min_scale_degenerate_cases():
    zero = polygon(np.zeros((1, 2)))
    line = polygon([[1.0, 0.0]])
    assert min_scale(zero, line) == 0.0
    assert min_scale(regions.rectangle(1.0, 1.0), line) == math.inf
    assert oracle_min_scale(regions.rectangle(1.0, 1.0), line) == math.inf
    assert min_scale(line, line) == pytest.approx(1.0)


def test_contains_scaled_rejects_negative():
    with pytest.raises(ValueError):
        contains_scaled(regions.rectangle(1, 1), regions.rectangle(1, 1), -1.0)


def test_from_parametric_rejects_bad_grid():
    with pytest.raises(ValueError):
        regions.from_parametric(np.cos, np.sin, [])


def test_serialization_round_trip():
    r = polygon([[1.0, 0.5], [0.3, 1.0]], {"tag": "x", "bad": math.inf})
    d = json.loads(r.to_json())
    assert d["meta"]["bad"] is None
    back = regions.Region2D.from_dict(d)
    lam = np.linspace(0, 1, 11)
    assert np.allclose(back.support(lam), r.support(lam))
    lines = r.to_csv().splitlines()
    assert lines[0] == "r1,r2"
    assert lines[1] == "0.0,1.0" and lines[-1] == "1.0,0.0"


def test_sample_boundary_is_monotone():
    r = regions.from_parametric(np.cos, np.sin, np.linspace(0, math.pi / 2, 65))
    b = r.sample_boundary(64)
    assert np.all(np.diff(b[:, 0]) >= 0) and np.all(np.diff(b[:, 1]) <= 0)
    assert b[0, 0] == 0.0 and b[-1, 1] == 0.0
