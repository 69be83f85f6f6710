import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from bcsep import regions
from bcsep.binary_bc import BinaryBroadcastSpec as Spec, capacity_region
from bcsep.infotheory import binary_entropy as hb
from bcsep.regions import _jsonable
from bcsep.source_binary import (
    Branch,
    HammingDistortionPair,
    boundary_slopes,
    check_kappa_gap,
    edge_slopes_fd,
    kappa_dagger,
    kappa_star,
    kappa_star_closed_form,
    oriented_source_region,
    slope_thresholds,
    source_region,
)

dist = st.floats(0.0, 0.45)


@st.composite
def specs(draw, kinds=("bsbc", "bebc", "bscbec")):
    kind = draw(st.sampled_from(kinds))
    if kind == "bsbc":
        a, b = sorted((draw(st.floats(0.0, 0.45)), draw(st.floats(0.0, 0.45))))
        return Spec.bsbc(a, b)
    if kind == "bebc":
        a, b = sorted((draw(st.floats(0.0, 0.9)), draw(st.floats(0.0, 0.9))))
        return Spec.bebc(a, b)
    return Spec.bscbec(draw(st.floats(0.0, 0.45)), draw(st.floats(0.0, 0.95)))


def test_distortion_validation():
    with pytest.raises(ValueError):
        HammingDistortionPair(0.5, 0.1)
    with pytest.raises(ValueError):
        HammingDistortionPair(-0.01, 0.1)
    with pytest.raises(ValueError):
        source_region((0.2, 0.1))


def test_source_region_corners():
    r = source_region((0.1, 0.2))
    assert r.corners == pytest.approx((1 - hb(0.1), 1 - hb(0.2)), abs=1e-12)
    t = source_region((0.1, 0.2), "C_tilde")
    assert regions.contains_scaled(t, r, 1.0)


def test_kappa_dagger_by_hand():
    d, spec = (0.035, 0.095), Spec.bsbc(0.15, 0.2)
    expected = max((1 - hb(0.035)) / (1 - hb(0.15)), (1 - hb(0.095)) / (1 - hb(0.2)))
    assert kappa_dagger(d, spec) == pytest.approx(expected, rel=1e-14)
    assert kappa_dagger((0.1, 0.1), Spec.bebc(0.2, 1.0)) == math.inf


def test_gap_instance():
    d, spec = (0.035, 0.095), Spec.bsbc(0.15, 0.2)
    v = check_kappa_gap(d, spec)
    assert v.branch is Branch.GAP
    assert v.gap > 1e-4
    oracle = regions.oracle_min_scale(source_region(d), capacity_region(spec, "c1"))
    assert v.kappa_star == pytest.approx(oracle, abs=1e-3)
    # the necessary threshold cannot exceed the compound-channel sufficient one
    assert v.kappa_star <= v.details["kappa_sufficient_compound"]
    json.dumps(_jsonable(v.to_dict()))


def test_slope_magnitudes_increase_along_the_curve():
    s0, sh = boundary_slopes((0.035, 0.095))
    assert abs(s0) == pytest.approx(0.591902938464842, rel=1e-12)
    assert abs(sh) == pytest.approx(0.7585848074921959, rel=1e-12)
    # the curve is concave, so the slope steepens from alpha = 0 to alpha = 1/2
    assert abs(s0) < abs(sh)


def test_slope_limits_at_zero_distortion():
    assert boundary_slopes((0.0, 0.0))[0] == -1.0
    assert boundary_slopes((0.0, 0.2))[0] == 0.0
    assert boundary_slopes((0.2, 0.0))[0] == -math.inf


def _fd_slope(d1, d2, alpha, h=1e-6):
    def r(a):
        x1 = a * (1 - d1) + (1 - a) * d1
        x2 = a * (1 - d2) + (1 - a) * d2
        return hb(x1), 1 - hb(x2)

    (a1, a2), (b1, b2) = r(alpha - h), r(alpha + h)
    return (b2 - a2) / (b1 - a1)


@given(st.floats(0.01, 0.45), st.floats(0.01, 0.45))
def test_slopes_match_finite_differences(d1, d2):
    s0, sh = boundary_slopes((d1, d2))
    assert s0 == pytest.approx(_fd_slope(d1, d2, 0.0), rel=1e-5)
    assert sh == pytest.approx(_fd_slope(d1, d2, 0.5 - 1e-3), rel=1e-5)


@pytest.mark.parametrize("spec", [
    Spec.bsbc(0.1, 0.2), Spec.bsbc(0.05, 0.3), Spec.bebc(0.2, 0.5), Spec.bscbec(0.1, 0.7),
])
def test_receiver1_thresholds_match_boundary(spec):
    th0, thc = slope_thresholds(spec, 1)
    fd0, fdc = edge_slopes_fd(capacity_region(spec, "c1"))
    assert fd0 == pytest.approx(th0, rel=2e-3)
    assert fdc == pytest.approx(thc, rel=2e-3)


@pytest.mark.parametrize("spec", [Spec.bsbc(0.1, 0.2), Spec.bebc(0.2, 0.5), Spec.bscbec(0.0, 0.4),
                                  Spec.bscbec(0.3, 0.2), Spec.bscbec(0.3, 0.87)])
def test_receiver2_thresholds_match_boundary(spec):
    th0, thc = slope_thresholds(spec, 2)
    region = capacity_region(spec, "c2").mirrored()
    fd0, fdc = edge_slopes_fd(region)
    if th0 == 0.0:
        # the boundary flattens like 1/log(1/alpha): finite differences only creep toward 0
        coarse = [edge_slopes_fd(region, step=h)[0] for h in (1e-2, 1e-3, 1e-4)]
        assert coarse[0] > coarse[1] > coarse[2] > fd0 > 0.0
    else:
        assert fd0 == pytest.approx(th0, rel=2e-3)
    if math.isinf(thc):
        steep = [edge_slopes_fd(region, step=h)[1] for h in (1e-2, 1e-3, 1e-4)]
        assert steep[0] < steep[1] < steep[2] < fdc and fdc > 100.0
    else:
        assert fdc == pytest.approx(thc, rel=2e-3)


def test_bscbec_c1_threshold_when_erasure_below_entropy():
    assert slope_thresholds(Spec.bscbec(0.2, 0.3), 1) == (1.0, math.inf)
    hp = hb(0.2)
    assert slope_thresholds(Spec.bscbec(0.2, hp), 1) == (1.0, 1.0)


def test_closed_form_availability():
    with pytest.raises(ValueError):
        kappa_star_closed_form((0.1, 0.2), Spec.bsbc(0.1, 0.2))
    # d1 > d2 on BSC&BEC: only determined when kappa_dagger >= 1
    assert kappa_dagger((0.3, 0.2), Spec.bscbec(0.01, 0.0)) < 1
    assert kappa_star_closed_form((0.3, 0.2), Spec.bscbec(0.01, 0.0)) is None
    d, spec = (0.3, 0.01), Spec.bscbec(0.3, 0.5)
    assert kappa_star_closed_form(d, spec) == pytest.approx(kappa_dagger(d, spec))


@given(dist, dist, specs(("bebc", "bscbec")))
@settings(max_examples=20, deadline=None)
def test_closed_form_matches_min_scale(d1, d2, spec):
    cf = kappa_star_closed_form((d1, d2), spec)
    assume(cf is not None and math.isfinite(cf))
    assert kappa_star((d1, d2), spec) == pytest.approx(cf, abs=1e-6)


@given(dist, dist, specs())
@settings(max_examples=25, deadline=None)
def test_branch_agrees_with_numeric_gap(d1, d2, spec):
    assume(min(spec.capacities()) > 1e-3)
    v = check_kappa_gap((d1, d2), spec, with_compound=False)
    assert v.kappa_star >= v.kappa_dagger - 1e-9
    if v.branch in (Branch.TRIVIAL_1, Branch.TRIVIAL_2):
        assert v.gap == pytest.approx(0.0, abs=1e-6)
    elif v.branch is Branch.GAP:
        assert v.gap > 0.0


@given(st.floats(0.0, 0.45), specs(("bsbc", "bebc", "bscbec")))
@settings(max_examples=15, deadline=None)
def test_equal_distortions_collapse(d, spec):
    assert kappa_star((d, d), spec) == pytest.approx(kappa_dagger((d, d), spec), abs=1e-6)


def test_reversed_order_uses_second_side_information():
    d, spec = (0.2, 0.05), Spec.bsbc(0.1, 0.15)
    k = kappa_star(d, spec)
    oracle = regions.oracle_min_scale(oriented_source_region(d), capacity_region(spec, "c2"))
    assert k == pytest.approx(oracle, abs=1e-3)
    assert k >= kappa_dagger(d, spec) - 1e-9
