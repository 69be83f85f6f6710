"""Capacity regions of the binary broadcast channel families.

Three families are covered: BS-BC(p1, p2) (two binary symmetric
components), BE-BC(e1, e2) (two binary erasure components) and
BSC(p)&BEC(e) (symmetric component at receiver 1, erasure at receiver 2).
Each has a region without side information and regions with the other
receiver's message available at receiver 1 (``C1``) or receiver 2 (``C2``).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import regions
from .infotheory import _hb_raw, binary_entropy, bisect_root, bsc, bec
from .regions import Region2D

N_GRID = regions.GRID
_BRACKET = 1e-9
REGIME_TOL = 1e-12


class Kind(str, enum.Enum):
    BSBC = "bsbc"
    BEBC = "bebc"
    BSCBEC = "bscbec"


class SideInfo(str, enum.Enum):
    NONE = "none"
    C1 = "c1"  # message 2 known at receiver 1
    C2 = "c2"  # message 1 known at receiver 2


class Regime(str, enum.Enum):
    ERASURE_LOW = "erasure_low"
    ERASURE_MID = "erasure_mid"
    ERASURE_HIGH = "erasure_high"


@dataclass(frozen=True)
class BinaryBroadcastSpec:
    kind: Kind
    a: float
    b: float

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        a, b = float(self.a), float(self.b)
        for v in (a, b):
            if not math.isfinite(v) or v < 0 or v > 1:
                raise ValueError(f"channel parameters must lie in [0, 1], got {self.a}, {self.b}")
        if kind is Kind.BSBC and not a <= b <= 0.5:
            raise ValueError(f"BS-BC requires 0 <= p1 <= p2 <= 1/2, got ({a}, {b})")
        if kind is Kind.BEBC and not a <= b:
            raise ValueError(f"BE-BC requires 0 <= e1 <= e2 <= 1, got ({a}, {b})")
        if kind is Kind.BSCBEC and a > 0.5:
            raise ValueError(f"BSC&BEC requires p in [0, 1/2], got {a}")

    @classmethod
    def bsbc(cls, p1, p2):
        return cls(Kind.BSBC, p1, p2)

    @classmethod
    def bebc(cls, e1, e2):
        return cls(Kind.BEBC, e1, e2)

    @classmethod
    def bscbec(cls, p, e):
        return cls(Kind.BSCBEC, p, e)

    @property
    def label(self) -> str:
        names = {Kind.BSBC: "BS-BC", Kind.BEBC: "BE-BC", Kind.BSCBEC: "BSC&BEC"}
        return f"{names[self.kind]}({self.a:g},{self.b:g})"

    def capacities(self) -> tuple[float, float]:
        """Point-to-point capacities of the two components."""
        if self.kind is Kind.BSBC:
            return 1 - binary_entropy(self.a), 1 - binary_entropy(self.b)
        if self.kind is Kind.BEBC:
            return 1 - self.a, 1 - self.b
        return 1 - binary_entropy(self.a), 1 - self.b

    def channels(self) -> tuple[np.ndarray, np.ndarray]:
        """Transition matrices of the two components."""
        if self.kind is Kind.BSBC:
            return bsc(self.a), bsc(self.b)
        if self.kind is Kind.BEBC:
            return bec(self.a), bec(self.b)
        return bsc(self.a), bec(self.b)


def _conv(a, p):
    return a * (1.0 - p) + (1.0 - a) * p


def regime_classify(p: float, e: float) -> Regime:
    # the region is continuous across both thresholds; within REGIME_TOL of
    # one the defining equations are lost in rounding, so snap to the side
    # that needs no root
    if e <= 4 * p * (1 - p) + REGIME_TOL:
        return Regime.ERASURE_LOW
    if e < binary_entropy(p) - REGIME_TOL:
        return Regime.ERASURE_MID
    return Regime.ERASURE_HIGH


def _interior_root(f, scan: int = 2000) -> float:
    """Root of f in (0, 1/2) where f goes from negative to positive.

    Both defining equations also vanish at alpha = 1/2, where f is flat and
    its sign is lost in rounding, so the bracket is taken left of the largest
    scanned value instead of at the interval endpoints.
    """
    grid = np.unique(np.concatenate([
        np.linspace(_BRACKET, 0.5 - _BRACKET, scan),
        0.5 - np.geomspace(_BRACKET, 0.25, scan),
        np.geomspace(1e-300, _BRACKET, 300),  # roots pushed toward 0 when p is tiny
    ]))
    vals = np.array([f(x) for x in grid])
    j = int(np.argmax(vals))
    neg = np.flatnonzero(vals[:j] < 0)
    if vals[j] > 0 and len(neg) == 0 and vals[0] > 0:
        # root below the smallest normal double (p subnormal): the region
        # coincides with its alpha -> 0 limit
        return 0.0
    if vals[j] <= 0 or len(neg) == 0:
        raise ValueError("no sign change found for the defining equation")
    i = neg[-1]
    if vals[i + 1] <= 0:
        raise ValueError("no sign change found for the defining equation")
    return bisect_root(f, grid[i], grid[i + 1])


def alpha_hat_residual(alpha, p, e):
    return 1 - binary_entropy(_conv(alpha, p)) + (1 - e) * binary_entropy(alpha) - (1 - e)


def alpha_hat(p: float, e: float) -> float:
    """Switch point of the BSC&BEC region when 4p(1-p) < e < H_b(p)."""
    if not (0 < p < 0.5 and 4 * p * (1 - p) < e < binary_entropy(p)):
        raise ValueError(f"alpha_hat needs 4p(1-p) < e < H_b(p), got p={p}, e={e}")
    return _interior_root(lambda a: alpha_hat_residual(a, p, e))


def alpha_tilde_residual(alpha, p, e):
    x = _conv(alpha, p)
    return (1 - 2 * p) * math.log((1 - x) / x) - (1 - e) * math.log((1 - alpha) / alpha)


def alpha_tilde(p: float, e: float) -> float:
    """Unique maximizer of 1 - H_b(alpha*p) + (1-e) H_b(alpha) on [0, 1/2]."""
    if not (0 < p <= 0.5 and 4 * p * (1 - p) < e < 1):
        raise ValueError(f"alpha_tilde needs 4p(1-p) < e < 1 and p > 0, got p={p}, e={e}")
    return _interior_root(lambda a: alpha_tilde_residual(a, p, e))


# -- region pieces -------------------------------------------------------------

def _grid(lo, hi):
    return np.linspace(lo, hi, N_GRID)


def bsbc_curve_region(p1: float, p2: float, meta=None) -> Region2D:
    """(H_b(a*p1) - H_b(p1), 1 - H_b(a*p2)) for a in [0, 1/2]."""
    h1 = float(_hb_raw(p1))
    return regions.from_parametric(
        lambda a: _hb_raw(_conv(a, p1)) - h1,
        lambda a: 1.0 - _hb_raw(_conv(a, p2)),
        _grid(0.0, 0.5), meta)


def _bsc_bec_curve(p, e, lo, hi) -> Region2D:
    return regions.from_parametric(
        lambda a: 1.0 - _hb_raw(_conv(a, p)),
        lambda a: (1.0 - e) * _hb_raw(a),
        _grid(lo, hi))


def _bsc_bec_none(p: float, e: float) -> Region2D:
    regime = regime_classify(p, e)
    if regime is Regime.ERASURE_LOW:
        return _bsc_bec_curve(p, e, 0.0, 0.5)
    if regime is Regime.ERASURE_HIGH:
        return regions.polygon([[1 - binary_entropy(p), 0.0], [0.0, 1 - e]])
    ah = alpha_hat(p, e)
    upper = regions.from_parametric(
        lambda a: 1.0 - _hb_raw(_conv(a, p)),
        lambda a: _hb_raw(_conv(a, p)) - e,
        _grid(ah, 0.5))
    return regions.union(_bsc_bec_curve(p, e, 0.0, ah), upper)


def _bsc_bec_c1(p: float, e: float) -> Region2D:
    hp = binary_entropy(p)
    if e <= hp:
        return regions.polygon([[1 - hp, hp - e], [0.0, 1 - e], [1 - hp, 0.0]])
    return _bsc_bec_none(p, e)


def _bsc_bec_c2(p: float, e: float) -> Region2D:
    if e == 1 or p == 0:
        hp = binary_entropy(p)
        return regions.polygon([[0.0, 1 - e], [max(1 - hp - (1 - e), 0.0), 1 - e], [1 - hp, 0.0]])
    if regime_classify(p, e) is Regime.ERASURE_LOW:
        return _bsc_bec_none(p, e)
    at = alpha_tilde(p, e)
    r1 = 1 - binary_entropy(_conv(at, p))
    total = r1 + (1 - e) * binary_entropy(at)
    # constraints are constant in alpha on (alpha_tilde, 1/2]: one pentagon
    pent = regions.polygon([[0.0, 1 - e], [total - (1 - e), 1 - e], [r1, total - r1], [r1, 0.0]])
    return regions.union(_bsc_bec_curve(p, e, 0.0, at), pent)


def capacity_region(spec: BinaryBroadcastSpec, mode: SideInfo | str = SideInfo.NONE) -> Region2D:
    mode = SideInfo(mode)
    meta = {"spec": spec.label, "mode": mode.value}
    c1, c2 = spec.capacities()
    if spec.kind is Kind.BSBC:
        if mode is SideInfo.C2:
            reg = regions.polygon([[0.0, c2], [c1 - c2, c2], [c1, 0.0]])
        else:
            reg = bsbc_curve_region(spec.a, spec.b)
    elif spec.kind is Kind.BEBC:
        if mode is SideInfo.C2:
            reg = regions.polygon([[0.0, c2], [c1 - c2, c2], [c1, 0.0]])
        else:
            reg = regions.polygon([[c1, 0.0], [0.0, c2]])
    else:
        p, e = spec.a, spec.b
        meta["regime"] = regime_classify(p, e).value
        builder = {SideInfo.NONE: _bsc_bec_none, SideInfo.C1: _bsc_bec_c1, SideInfo.C2: _bsc_bec_c2}[mode]
        reg = builder(p, e)
    meta["corner_capacities"] = [c1, c2]
    return Region2D(reg.vertices, reg.curves, meta)


def bsc_bec_tilde_region(p: float, e: float) -> Region2D:
    """{R1 <= 1 - H_b(a*p), R2 <= (1-e) H_b(a)} over a in [0, 1/2] (no sum cap)."""
    return _bsc_bec_curve(p, e, 0.0, 0.5)
