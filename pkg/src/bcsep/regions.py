"""Convex, downward-comprehensive rate regions in the nonnegative quadrant.

A region is the downward closure of the convex hull of a finite set of
generating points together with any number of parametric curves
t -> (r1(t), r2(t)).  Curves are kept symbolically so that support values
can be refined beyond the sampling grid; the sampled points give the
piecewise-linear boundary used for export and breakpoints.

Containment and minimal scaling are reduced to the support function
h(lam) = max over the region of lam*R1 + (1-lam)*R2, lam in [0, 1].
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np


GRID = 4097
SUPPORT_SLACK = 1e-9
ZERO = 1e-13
_TIE = 1e-12
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _vectorize(f: Callable) -> Callable:
    def wrapped(t):
        t = np.asarray(t, dtype=float)
        try:
            out = np.asarray(f(t), dtype=float)
        except (TypeError, ValueError):
            out = np.vectorize(lambda s: float(f(s)), otypes=[float])(t)
        return np.broadcast_to(out, t.shape).astype(float)

    return wrapped


def golden_vec(f, a, b, iters: int):
    """Elementwise golden-section maximization of a vectorized ``f`` on [a, b]."""
    a = np.asarray(a, dtype=float).copy()
    b = np.asarray(b, dtype=float).copy()
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c_new = np.where(left, b - _INVPHI * (b - a), d)
        d_new = np.where(left, c, a + _INVPHI * (b - a))
        fp = f(np.where(left, c_new, d_new))
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
        c, d = c_new, d_new
    return np.where(fc >= fd, c, d), np.maximum(fc, fd)


def envelope_indices(pts: np.ndarray) -> np.ndarray:
    """Indices of the upper-right hull vertices of ``pts``, ordered by R1.

    The hull runs from the highest point (rightmost among ties) to the
    rightmost point (highest among ties); collinear vertices are dropped.
    """
    pts = np.asarray(pts, dtype=float)
    if len(pts) == 0:
        return np.zeros(0, dtype=int)
    x, y = pts[:, 0], pts[:, 1]
    ymax = y.max()
    top_x = x[y >= ymax - _TIE].max()
    order = np.lexsort((-y, x))
    scale = max(1.0, float(np.abs(pts).max())) ** 2
    hull: list[int] = []
    last_x = None
    for i in order:
        if x[i] < top_x - _TIE or (x[i] <= top_x and y[i] < ymax - _TIE):
            continue
        if last_x is not None and x[i] - last_x <= _TIE:
            continue  # same abscissa, lower point
        last_x = x[i]
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross >= -_TIE * scale:
                hull.pop()
            else:
                break
        hull.append(int(i))
    return np.asarray(hull, dtype=int)


def edge_directions(env: np.ndarray) -> np.ndarray:
    """For each boundary edge, the lam at which both endpoints tie in support."""
    if len(env) < 2:
        return np.zeros(0)
    d1 = np.diff(env[:, 0])
    d2 = -np.diff(env[:, 1])
    return d2 / (d1 + d2)


def _clean(pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    pts = pts[np.all(np.isfinite(pts), axis=1)]
    pts = pts[np.all(pts >= -1e-12, axis=1)]
    return np.maximum(pts, 0.0)


@dataclass(frozen=True, eq=False)
class Curve:
    """A sampled parametric boundary piece with vectorized coordinate maps."""

    r1: Callable
    r2: Callable
    t: np.ndarray

    @cached_property
    def points(self) -> np.ndarray:
        return np.column_stack([self.r1(self.t), self.r2(self.t)])

    @cached_property
    def _hull(self):
        pts = self.points
        good = np.all(np.isfinite(pts), axis=1) & np.all(pts >= -1e-12, axis=1)
        idx = np.flatnonzero(good)
        env = envelope_indices(np.maximum(pts[idx], 0.0))
        sel = idx[env]
        return sel, edge_directions(np.maximum(pts[sel], 0.0))

    def refined_support(self, lam: np.ndarray, iters: int = 32) -> np.ndarray:
        sel, lams = self._hull
        if len(sel) == 0:
            return np.full(lam.shape, -np.inf)
        # the maximizer lies between the hull neighbours of the best hull
        # vertex; nearly collinear samples dropped from the hull may sit
        # outside the immediate grid neighbours
        j = np.searchsorted(lams, lam)
        t = self.t
        ta = t[sel[np.maximum(j - 1, 0)]]
        tb = t[sel[np.minimum(j + 1, len(sel) - 1)]]
        a, b = np.minimum(ta, tb), np.maximum(ta, tb)

        def f(s):
            with np.errstate(all="ignore"):
                v = lam * self.r1(s) + (1.0 - lam) * self.r2(s)
            return np.where(np.isfinite(v), v, -np.inf)

        return golden_vec(f, a, b, iters)[1]


@dataclass(frozen=True, eq=False)
class Region2D:
    """Downward closure of conv(vertices ∪ curves) within the quadrant."""

    vertices: np.ndarray = field(default_factory=lambda: np.zeros((1, 2)))
    curves: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", _clean(np.vstack([np.zeros((1, 2)), self.vertices])))

    # -- geometry -----------------------------------------------------------
    @cached_property
    def boundary(self) -> np.ndarray:
        """Upper-right boundary, strictly increasing in R1."""
        pts = [self.vertices] + [_clean(c.points) for c in self.curves]
        allpts = np.vstack(pts)
        return allpts[envelope_indices(allpts)]

    @cached_property
    def breakpoints(self) -> np.ndarray:
        return edge_directions(self.boundary)

    @property
    def degenerate(self) -> bool:
        b = self.boundary
        return bool(b[:, 0].max() <= ZERO or b[:, 1].max() <= ZERO)

    @property
    def corners(self) -> tuple[float, float]:
        """(max R1, max R2) -- the single-user rates."""
        return float(self.support(1.0)), float(self.support(0.0))

    def support(self, lam):
        lam_arr = np.clip(np.atleast_1d(np.asarray(lam, dtype=float)), 0.0, 1.0)
        env = self.boundary
        v = env[np.searchsorted(self.breakpoints, lam_arr)]
        h = lam_arr * v[:, 0] + (1.0 - lam_arr) * v[:, 1]
        for c in self.curves:
            h = np.maximum(h, c.refined_support(lam_arr))
        h = np.maximum(h, 0.0)
        if np.ndim(lam) == 0:
            return float(h[0])
        return h.reshape(np.shape(lam))

    def scaled(self, k: float) -> "Region2D":
        k = float(k)
        if k < 0:
            raise ValueError("scale factor must be nonnegative")
        curves = tuple(
            Curve(_scale_fn(c.r1, k), _scale_fn(c.r2, k), c.t) for c in self.curves
        )
        return Region2D(self.vertices * k, curves, dict(self.meta))

    def mirrored(self) -> "Region2D":
        """Swap the roles of R1 and R2."""
        curves = tuple(Curve(c.r2, c.r1, c.t) for c in self.curves)
        return Region2D(self.vertices[:, ::-1].copy(), curves, dict(self.meta))

    def dense_points(self, n: int = 10_000) -> np.ndarray:
        """Generating points with every curve resampled at ``n`` parameters.

        Samples are clustered towards curve endpoints, where boundary
        derivatives may blow up.
        """
        pts = [self.vertices]
        for c in self.curves:
            t0, t1 = float(c.t[0]), float(c.t[-1])
            span = t1 - t0
            u = np.linspace(0.0, 1.0, n)
            edge = np.geomspace(1e-12, 1e-2, 200)
            s = np.unique(np.concatenate([u, edge, 1.0 - edge]))
            pts.append(_clean(np.column_stack([c.r1(t0 + s * span), c.r2(t0 + s * span)])))
        return np.vstack(pts)

    def sample_boundary(self, n: int = 512) -> np.ndarray:
        """Closed boundary from (0, max R2) to (max R1, 0) with about n points."""
        pts = [self.vertices]
        for c in self.curves:
            s = np.linspace(float(c.t[0]), float(c.t[-1]), max(n, 2))
            pts.append(_clean(np.column_stack([c.r1(s), c.r2(s)])))
        allpts = np.vstack(pts)
        env = allpts[envelope_indices(allpts)]
        return close_boundary(env)

    # -- serialization ------------------------------------------------------
    def to_dict(self, n: int = 512) -> dict:
        b = self.sample_boundary(n)
        return {"boundary": b.tolist(), "corners": list(self.corners), "meta": _jsonable(self.meta)}

    def to_json(self, n: int = 512) -> str:
        return json.dumps(self.to_dict(n), sort_keys=True)

    def to_csv(self, n: int = 512) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r1", "r2"])
        for r1, r2 in self.sample_boundary(n):
            w.writerow([repr(float(r1)), repr(float(r2))])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, data: dict) -> "Region2D":
        return cls(np.asarray(data["boundary"], dtype=float).reshape(-1, 2), (), dict(data.get("meta", {})))


def _scale_fn(f, k):
    return lambda t: k * f(t)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if hasattr(obj, "value"):  # enums
        return obj.value
    return obj


def close_boundary(env: np.ndarray) -> np.ndarray:
    out = [env]
    if env[0, 0] > 0:
        out.insert(0, np.array([[0.0, env[0, 1]]]))
    if env[-1, 1] > 0:
        out.append(np.array([[env[-1, 0], 0.0]]))
    return np.vstack(out)


# -- constructors ---------------------------------------------------------------

def polygon(points, meta: dict | None = None) -> Region2D:
    """Downward closure of the convex hull of ``points``."""
    return Region2D(np.asarray(points, dtype=float).reshape(-1, 2), (), meta or {})


def rectangle(a: float, b: float) -> Region2D:
    return polygon([[a, b]])


def from_parametric(r1_of_t, r2_of_t, t_grid: Sequence[float], meta: dict | None = None) -> Region2D:
    """Convex hull of the union of rectangles [0, r1(t)] x [0, r2(t)]."""
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0:
        raise ValueError("parameter grid must not be empty")
    t = np.unique(t)
    curve = Curve(_vectorize(r1_of_t), _vectorize(r2_of_t), t)
    pts = curve.points
    if not np.all(np.isfinite(pts)):
        raise ValueError("curve must be finite on the grid")
    return Region2D(np.zeros((0, 2)), (curve,), meta or {})


def union(*regions: Region2D, meta: dict | None = None) -> Region2D:
    """Convex hull of the union of regions."""
    verts = np.vstack([r.vertices for r in regions])
    curves = tuple(c for r in regions for c in r.curves)
    return Region2D(verts, curves, meta or {})


# -- support-function algebra ------------------------------------------------

def support(region: Region2D, lam):
    return region.support(lam)


def _direction_grid(A: Region2D, B: Region2D, grid: int = GRID) -> np.ndarray:
    return np.unique(np.concatenate([np.linspace(0.0, 1.0, grid), A.breakpoints, B.breakpoints]))


def contains_scaled(A: Region2D, B: Region2D, kappa: float) -> bool:
    """Whether A ⊆ kappa·B, tested on support values over a direction grid."""
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    lam = _direction_grid(A, B)
    return bool(np.all(A.support(lam) <= kappa * B.support(lam) + SUPPORT_SLACK))


def min_scale(A: Region2D, B: Region2D, refine: int = 8) -> float:
    """Smallest kappa >= 0 with A ⊆ kappa·B (``math.inf`` if none exists).

    Evaluated as the sup over directions of h_A/h_B; directions where both
    supports vanish are ignored.
    """
    lam = _direction_grid(A, B)
    hA, hB = A.support(lam), B.support(lam)
    zeroB = hB <= ZERO
    if np.any(zeroB & (hA > ZERO)):
        return math.inf
    ok = ~zeroB
    if not ok.any():
        return 0.0
    ratio = np.full(lam.shape, -np.inf)
    ratio[ok] = hA[ok] / hB[ok]
    best = float(ratio.max())

    def ratio_at(l):
        b = B.support(l)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(b > ZERO, A.support(l) / b, -np.inf)

    n = len(lam)
    prev = np.concatenate([[-np.inf], ratio[:-1]])
    nxt = np.concatenate([ratio[1:], [-np.inf]])
    peaks = np.flatnonzero((ratio >= prev) & (ratio >= nxt) & np.isfinite(ratio))
    peaks = peaks[np.argsort(-ratio[peaks], kind="stable")][:refine]
    if len(peaks):
        lo = lam[np.maximum(peaks - 1, 0)]
        hi = lam[np.minimum(peaks + 1, n - 1)]
        best = max(best, float(golden_vec(ratio_at, lo, hi, 40)[1].max()))
    return max(best, 0.0)


def _top_boundary(B: Region2D, n: int):
    """Interpolation table (x, y) of B's top boundary over [0, max R1]."""
    env = B.dense_points(n)
    env = env[envelope_indices(env)]
    if env[0, 0] > 0:
        env = np.vstack([[0.0, env[0, 1]], env])
    return env[:, 0], env[:, 1]


def oracle_min_scale(A: Region2D, B: Region2D, n: int = 10_000) -> float:
    """Brute-force min scale: per boundary point of A, bisect on kappa.

    Membership in B is decided by interpolating B's densely sampled boundary,
    independently of the support-function machinery.
    """
    pts = A.dense_points(n)
    pts = pts[np.any(pts > ZERO, axis=1)]
    if len(pts) == 0:
        return 0.0
    bx, by = _top_boundary(B, 2 * n)
    tol = 1e-12

    def inside(p, k):
        q = p / k[:, None]
        # relative slack only: an absolute one would admit any point once
        # it is scaled down far enough
        return (q[:, 0] <= bx[-1] * (1 + tol)) & (q[:, 1] <= np.interp(q[:, 0], bx, by) * (1 + tol))

    hi = np.ones(len(pts))
    for _ in range(200):
        out = ~inside(pts, hi)
        if not out.any():
            break
        hi[out] *= 2.0
        if hi.max() > 1e15:
            return math.inf
    lo = np.zeros(len(pts))
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        mid_safe = np.maximum(mid, 1e-300)
        ok = inside(pts, mid_safe)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    return float(hi.max())
