"""Binary uniform source under Hamming distortion over a binary broadcast channel.

The necessary condition compares the region C(BS-BC(d1, d2)) (built from the
distortion pair as if it were a broadcast channel) with the channel's
side-information region.  ``kappa_star`` is the smallest bandwidth ratio
passing that test, ``kappa_dagger`` the weaker point-to-point threshold.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import regions
from .binary_bc import (
    BinaryBroadcastSpec,
    Kind,
    Regime,
    SideInfo,
    bsbc_curve_region,
    capacity_region,
    regime_classify,
)
from .infotheory import _hb_raw, binary_entropy, compound_capacity
from .regions import Region2D


class Branch(str, enum.Enum):
    TRIVIAL_1 = "trivial_branch_1"
    TRIVIAL_2 = "trivial_branch_2"
    GAP = "nontrivial_gap"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class HammingDistortionPair:
    d1: float
    d2: float

    def __post_init__(self):
        for d in (self.d1, self.d2):
            if not (math.isfinite(d) and 0.0 <= d < 0.5):
                raise ValueError(f"distortions must lie in [0, 1/2), got ({self.d1}, {self.d2})")

    def swapped(self) -> "HammingDistortionPair":
        return HammingDistortionPair(self.d2, self.d1)


def _pair(d) -> HammingDistortionPair:
    if isinstance(d, HammingDistortionPair):
        return d
    return HammingDistortionPair(*map(float, d))


@dataclass
class KappaVerdict:
    kappa_star: float
    kappa_dagger: float
    gap: float
    branch: Branch
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if math.isfinite(self.kappa_star) and self.kappa_star < self.kappa_dagger - 1e-9:
            raise ValueError("kappa_star fell below kappa_dagger")

    def to_dict(self) -> dict:
        return {
            "kappa_star": self.kappa_star,
            "kappa_dagger": self.kappa_dagger,
            "gap": self.gap,
            "branch": self.branch.value,
            "details": self.details,
        }


def source_region(d, variant: str = "C") -> Region2D:
    """C(BS-BC(d1, d2)) or its time-sharing inner region C~, for d1 <= d2."""
    d = _pair(d)
    if d.d1 > d.d2:
        raise ValueError("source_region expects d1 <= d2; mirror the result for the other order")
    meta = {"source": f"BS-BC({d.d1:g},{d.d2:g})", "variant": variant}
    if variant == "C":
        return bsbc_curve_region(d.d1, d.d2, meta)
    if variant == "C_tilde":
        return regions.polygon([[1 - binary_entropy(d.d1), 0.0], [0.0, 1 - binary_entropy(d.d2)]], meta)
    raise ValueError(f"unknown variant {variant!r}")


def oriented_source_region(d) -> Region2D:
    """C(BS-BC(d1, d2)) for either ordering of the distortions."""
    d = _pair(d)
    if d.d1 <= d.d2:
        return source_region(d)
    return source_region(d.swapped()).mirrored()


def _ratio(num: float, cap: float) -> float:
    if cap <= 0.0:
        return math.inf if num > 0 else 0.0
    return num / cap


def kappa_dagger(d, spec: BinaryBroadcastSpec) -> float:
    d = _pair(d)
    c1, c2 = spec.capacities()
    return max(_ratio(1 - binary_entropy(d.d1), c1), _ratio(1 - binary_entropy(d.d2), c2))


def kappa_star(d, spec: BinaryBroadcastSpec, mode: SideInfo | str | None = None) -> float:
    """Minimal kappa with C(BS-BC(d1, d2)) ⊆ kappa·C_i.

    C1 is used when d1 <= d2 and C2 otherwise; ``mode`` overrides the choice
    (e.g. ``"none"`` for the plain capacity region).
    """
    d = _pair(d)
    if mode is None:
        mode = SideInfo.C1 if d.d1 <= d.d2 else SideInfo.C2
    return regions.min_scale(oriented_source_region(d), capacity_region(spec, mode))


def _xlog(d: float) -> float:
    """(1 - 2d) log((1-d)/d), with the d -> 0 limit +inf."""
    if d == 0.0:
        return math.inf
    return (1 - 2 * d) * math.log((1 - d) / d)


def _log_ratio(num_d: float, den_d: float) -> float:
    """xlog(num_d) / xlog(den_d) with 0/0-type limits at zero distortion."""
    if num_d == 0.0 and den_d == 0.0:
        return 1.0
    if num_d == 0.0:
        return math.inf
    if den_d == 0.0:
        return 0.0
    return _xlog(num_d) / _xlog(den_d)


def boundary_slopes(d) -> tuple[float, float]:
    """dR2/dR1 along the C(BS-BC(d1, d2)) curve at alpha = 0 and alpha = 1/2."""
    d = _pair(d)
    at_zero = -_log_ratio(d.d2, d.d1)
    at_half = -((1 - 2 * d.d2) ** 2) / ((1 - 2 * d.d1) ** 2)
    return at_zero, at_half


def _separable_max(d_strong: float, d_weak: float, den_strong: float, den_weak: float) -> float:
    """max over alpha of (H(a*ds) - H(ds))/den_s + (1 - H(a*dw))/den_w."""
    if den_strong <= 0 or den_weak <= 0:
        return math.inf
    hs = float(_hb_raw(d_strong))

    def objective(a):
        a = np.asarray(a, dtype=float)
        xs = a * (1 - d_strong) + (1 - a) * d_strong
        xw = a * (1 - d_weak) + (1 - a) * d_weak
        return (_hb_raw(xs) - hs) / den_strong + (1 - _hb_raw(xw)) / den_weak

    grid = np.linspace(0.0, 0.5, regions.GRID)
    vals = objective(grid)
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    refined = regions.golden_vec(objective, np.array([lo]), np.array([hi]), 60)[1][0]
    return float(max(vals[i], refined, objective(0.0), objective(0.5)))


def kappa_star_closed_form(d, spec: BinaryBroadcastSpec) -> float | None:
    """One-dimensional formulas for kappa_star on BE-BC and BSC&BEC.

    Returns None where no formula is available: BSC&BEC with d1 > d2 and
    kappa_dagger < 1.
    """
    d = _pair(d)
    if spec.kind is Kind.BSBC:
        raise ValueError("no closed form for BS-BC; use kappa_star")
    c1, c2 = spec.capacities()
    if spec.kind is Kind.BSCBEC and d.d1 > d.d2:
        kd = kappa_dagger(d, spec)
        return kd if kd >= 1 else None
    # BE-BC, or BSC&BEC with d1 <= d2 where BSC(p) acts like an erasure
    # channel with erasure probability H_b(p)
    if d.d1 <= d.d2:
        return _separable_max(d.d1, d.d2, c1, c2)
    return _separable_max(d.d2, d.d1, c2, c1)


def slope_thresholds(spec: BinaryBroadcastSpec, receiver: int) -> tuple[float, float]:
    """Closed-form edge slopes of the side-information region.

    receiver=1 gives (phi'_+(0), phi'_-(C(Y1))) for C1, where phi(R1) is the
    largest R2; receiver=2 gives the mirrored pair for C2 with R1 as a
    function of R2.
    """
    c1, c2 = spec.capacities()
    p_or_e1, e2 = spec.a, spec.b
    if receiver == 1:
        if spec.kind is Kind.BSBC:
            return _log_ratio(e2, p_or_e1), ((1 - 2 * e2) ** 2) / ((1 - 2 * p_or_e1) ** 2)
        if spec.kind is Kind.BEBC:
            return _ratio(c2, c1), _ratio(c2, c1)
        hp = binary_entropy(p_or_e1)
        if e2 < hp:
            return 1.0, math.inf
        if e2 == hp:
            return 1.0, 1.0
        return _ratio(c2, c1), _ratio(c2, c1)
    # receiver 2: R1 as a function of R2 on C2
    if spec.kind in (Kind.BSBC, Kind.BEBC) or p_or_e1 == 0 or e2 == 1:
        return 1.0, (math.inf if c1 > c2 else 1.0)
    p = p_or_e1
    if regime_classify(p, e2) is Regime.ERASURE_LOW:
        return 0.0, ((1 - 2 * p) ** 2) / (1 - e2)
    return 0.0, math.inf


def check_kappa_gap(d, spec: BinaryBroadcastSpec, with_compound: bool = True) -> KappaVerdict:
    """Decide kappa_star = kappa_dagger vs kappa_star > kappa_dagger from slopes.

    The slope comparisons are evaluated first; kappa_star and kappa_dagger
    are then computed numerically and reported alongside.
    """
    d = _pair(d)
    c1, c2 = spec.capacities()
    ks = kappa_star(d, spec)
    kd = kappa_dagger(d, spec)
    if d.d1 <= d.d2:
        da, db, cap_a, cap_b, receiver = d.d1, d.d2, c1, c2, 1
    else:
        da, db, cap_a, cap_b, receiver = d.d2, d.d1, c2, c1, 2
    q0 = _log_ratio(db, da)
    qh = ((1 - 2 * db) ** 2) / ((1 - 2 * da) ** 2)
    th0, thc = slope_thresholds(spec, receiver)
    details = {
        "oriented_receiver": receiver,
        "source_slope_ratio_at_0": q0,
        "source_slope_ratio_at_half": qh,
        "channel_slope_at_0": th0,
        "channel_slope_at_capacity": thc,
        "slope_method": "closed_form",
    }
    if cap_a <= 0 or cap_b <= 0:
        branch = Branch.UNDETERMINED
    elif cap_b >= qh * cap_a:
        branch = Branch.TRIVIAL_1
    elif cap_b <= q0 * cap_a:
        branch = Branch.TRIVIAL_2
    elif da < db and q0 < th0 and qh > thc:
        branch = Branch.GAP
    else:
        branch = Branch.UNDETERMINED
    if with_compound:
        cc = compound_capacity(*spec.channels())
        need = max(1 - binary_entropy(d.d1), 1 - binary_entropy(d.d2))
        details["compound_capacity"] = cc
        details["kappa_sufficient_compound"] = _ratio(need, cc)
    gap = ks - kd if math.isfinite(ks) and math.isfinite(kd) else math.nan
    return KappaVerdict(ks, kd, gap, branch, details)


def edge_slopes_fd(region: Region2D, step: float = 1e-5, n: int = 200_001) -> tuple[float, float]:
    """Finite-difference (phi'_+(0), phi'_-(C)) read off a densely sampled boundary."""
    pts = region.dense_points(n)
    env = pts[regions.envelope_indices(pts)]
    env = regions.close_boundary(env)
    x, y = env[:, 0], env[:, 1]
    keep = np.concatenate([[True], np.diff(x) > 0])
    x, y = x[keep], y[keep]
    cap1 = float(x[-1])
    cap2 = float(y[0])
    phi = lambda r: float(np.interp(r, x, y))  # noqa: E731
    return (cap2 - phi(step)) / step, phi(cap1 - step) / step
