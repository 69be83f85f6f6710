"""Quadratic-Gaussian source over a Gaussian broadcast channel.

Rates are in bits.  The power bounds are suprema over an auxiliary noise
covariance Sigma_Z > 0; the scalar case is searched on a log grid with the
two limits Sigma_Z -> 0 and Sigma_Z -> infinity added analytically, the
matrix case by multistart Nelder-Mead over a Cholesky factor of Sigma_Z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from . import regions
from .binary_bc import SideInfo
from .linalg import check_spd, loewner_leq, min_eig
from .regions import Region2D

Z_MIN, Z_MAX = 1e-8, 1e8
SCALAR_GRID = 4001
STARTS = np.geomspace(1e-4, 1e4, 8)


@dataclass(frozen=True)
class GaussianChannel:
    P: float
    N1: float
    N2: float

    def __post_init__(self):
        if not (math.isfinite(self.P) and self.P >= 0):
            raise ValueError(f"power must be finite and >= 0, got {self.P}")
        if not (0 < self.N1 <= self.N2 < math.inf):
            raise ValueError(f"need 0 < N1 <= N2, got N1={self.N1}, N2={self.N2}")

    def capacities(self) -> tuple[float, float]:
        return 0.5 * math.log2(1 + self.P / self.N1), 0.5 * math.log2(1 + self.P / self.N2)


@dataclass(frozen=True)
class GaussianProblemSpec:
    """Source covariance, optional block split, channel noise levels and bandwidth ratio."""

    sigma_s: np.ndarray
    N1: float
    N2: float
    kappa: float = 1.0
    partition: tuple[int, int] | None = None

    def __post_init__(self):
        s = check_spd(self.sigma_s, "sigma_s")
        object.__setattr__(self, "sigma_s", s)
        if not (self.kappa > 0 and math.isfinite(self.kappa)):
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        GaussianChannel(0.0, self.N1, self.N2)
        if self.partition is not None:
            l1, l2 = self.partition
            if l1 < 1 or l2 < 1 or l1 + l2 != s.shape[0]:
                raise ValueError(f"partition {self.partition} does not split dimension {s.shape[0]}")


@dataclass
class BoundResult:
    value: float
    optimizer_sigma_z: list | None
    endpoint_values: dict
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "p_star": self.value,
            "optimizer_sigma_z": self.optimizer_sigma_z,
            "endpoint_values": self.endpoint_values,
        }
        out.update(self.extra)
        return out


def _ld(a: np.ndarray) -> float:
    """log-determinant; -inf for singular or indefinite input."""
    sign, val = np.linalg.slogdet(a)
    return val if sign > 0 else -math.inf


# -- regions ----------------------------------------------------------------------

def gbc_capacity_region(P: float, N1: float, N2: float, mode: SideInfo | str = SideInfo.NONE) -> Region2D:
    ch = GaussianChannel(float(P), float(N1), float(N2))
    mode = SideInfo(mode)
    c1, c2 = ch.capacities()
    meta = {"spec": f"G-BC({P:g},{N1:g},{N2:g})", "mode": mode.value, "corner_capacities": [c1, c2]}
    if ch.P == 0:
        return regions.polygon(np.zeros((1, 2)), meta)
    if mode is SideInfo.C2:
        return regions.polygon([[0.0, c2], [c1 - c2, c2], [c1, 0.0]], meta)
    P, N1, N2 = ch.P, ch.N1, ch.N2
    return regions.from_parametric(
        lambda b: 0.5 * np.log2((b * P + N1) / N1),
        lambda b: 0.5 * np.log2((P + N2) / (b * P + N2)),
        np.linspace(0.0, 1.0, regions.GRID), meta)


def _check_distortions(sigma_s, d1, d2):
    s = check_spd(sigma_s, "sigma_s")
    d1 = check_spd(d1, "D1", strict=False)
    d2 = check_spd(d2, "D2", strict=False)
    if not (d1.shape == d2.shape == s.shape):
        raise ValueError("sigma_s, D1 and D2 must share a dimension")
    if not loewner_leq(d1, s):
        raise ValueError("D1 must satisfy D1 ⪯ sigma_s")
    if not loewner_leq(d2, s):
        raise ValueError("D2 must satisfy D2 ⪯ sigma_s")
    return s, d1, d2


def _rd_bounds(s, d1, d2, which):
    """Rectangle corner (R1, R2) in bits as a function of Sigma_Z."""
    ls, l1, l2 = _ld(s), _ld(d1), _ld(d2)

    def r1set(z):
        return (0.5 * (ls + _ld(d1 + z) - l1 - _ld(s + z)) / math.log(2),
                0.5 * (_ld(s + z) - _ld(d2 + z)) / math.log(2))

    def r2set(z):
        return (0.5 * (_ld(s + z) - _ld(d1 + z)) / math.log(2),
                0.5 * (ls + _ld(d2 + z) - l2 - _ld(s + z)) / math.log(2))

    return r1set if which == "R1set" else r2set


def source_rd_region(sigma_s, d1, d2, which: str = "R1set", n: int = 2001) -> Region2D:
    """Convex closure of the Gaussian source rate sets over Sigma_Z > 0.

    For scalars the family is exhaustive (a log grid in sigma_z^2 plus both
    limits).  For matrices the closure is taken over t*M for a fixed family
    of shapes M, which gives an inner approximation.
    """
    if which not in ("R1set", "R2set"):
        raise ValueError(f"which must be 'R1set' or 'R2set', got {which!r}")
    s, d1, d2 = _check_distortions(sigma_s, d1, d2)
    if min(min_eig(d1), min_eig(d2)) < 1e-10:
        raise ValueError("source_rd_region needs positive definite distortion matrices")
    corner = _rd_bounds(s, d1, d2, which)
    ell = s.shape[0]
    ln2 = math.log(2)
    lim0 = corner(np.zeros_like(s))
    lim_inf_1 = 0.5 * (_ld(s) - _ld(d1)) / ln2
    lim_inf_2 = 0.5 * (_ld(s) - _ld(d2)) / ln2
    lim_inf = (lim_inf_1, 0.0) if which == "R1set" else (0.0, lim_inf_2)
    meta = {"source": "gaussian", "set": which, "dimension": ell}
    ts = np.geomspace(Z_MIN, Z_MAX, n)
    if ell == 1:
        pts = np.array([corner(np.array([[t]])) for t in ts] + [lim0, lim_inf])
        return regions.polygon(np.maximum(pts, 0.0), meta)
    rng = np.random.default_rng(0)
    shapes = [np.eye(ell)]
    for k in range(ell):
        e = np.eye(ell)
        e[k, k] = 1e-3
        shapes.append(e)
    for _ in range(6):
        a = rng.standard_normal((ell, ell))
        shapes.append(a @ a.T + 0.1 * np.eye(ell))
    pts = [lim0, lim_inf]
    for m in shapes:
        pts.extend(corner(t * m) for t in ts[:: max(1, n // 400)])
    return regions.polygon(np.maximum(np.array(pts), 0.0), meta)


def conditional_rate_pair(d1_tilde, sigma_tilde, d2_tilde, split: int) -> tuple[float, float]:
    """Separation rates for a source (S~1, S~2) split after ``split`` coordinates.

    R1 = 1/2 log |Schur complement of Sigma~ on S~1| / |D~11 - K D~21| with
    K D~22 = D~12 solved in the least-squares sense; R2 = 1/2 log |Sigma_S~2| / |D~2|.
    """
    st = check_spd(sigma_tilde, "sigma_tilde")
    dt = check_spd(d1_tilde, "D1_tilde", strict=False)
    if dt.shape != st.shape or not 0 < split < st.shape[0]:
        raise ValueError("D1_tilde must match sigma_tilde and split must be interior")
    s11, s12, s22 = st[:split, :split], st[:split, split:], st[split:, split:]
    d2t = check_spd(d2_tilde, "D2_tilde", strict=False)
    if d2t.shape != s22.shape:
        raise ValueError("D2_tilde must match the second block")
    d11, d12, d21, d22 = dt[:split, :split], dt[:split, split:], dt[split:, :split], dt[split:, split:]
    # K D22 = D12  <=>  D22^T K^T = D12^T
    kt, *_ = np.linalg.lstsq(d22.T, d12.T, rcond=None)
    k = kt.T
    resid = float(np.max(np.abs(k @ d22 - d12))) if d12.size else 0.0
    if resid >= 1e-9:
        raise ValueError(f"K D22 = D12 has no solution (residual {resid:.3g})")
    schur = s11 - s12 @ np.linalg.solve(s22, s12.T)
    ln2 = math.log(2)
    r1 = 0.5 * (_ld(schur) - _ld(d11 - k @ d21)) / ln2
    r2 = 0.5 * (_ld(s22) - _ld(d2t)) / ln2
    return r1, r2


def det_identity_sides(sigma_s, d1, sigma_z) -> tuple[float, float]:
    """Both sides of |S - S(S+Z)^-1 S| |D1| |S+Z| = |S| |D1+Z| |D1 - D1(D1+Z)^-1 D1|."""
    s, d, z = (np.asarray(m, dtype=float) for m in (sigma_s, d1, sigma_z))
    lhs = np.linalg.det(s - s @ np.linalg.solve(s + z, s)) * np.linalg.det(d) * np.linalg.det(s + z)
    rhs = np.linalg.det(s) * np.linalg.det(d + z) * np.linalg.det(d - d @ np.linalg.solve(d + z, d))
    return float(lhs), float(rhs)


# -- power bounds -------------------------------------------------------------------

def _pstar_objective(s, d1, d2, n1, n2, kappa) -> Callable[[np.ndarray], float]:
    ls, l1 = _ld(s), _ld(d1)

    def f(z):
        a = (ls + _ld(d1 + z) - l1 - _ld(d2 + z)) / kappa
        b = (_ld(s + z) - _ld(d2 + z)) / kappa
        return n1 * math.exp(a) + (n2 - n1) * math.exp(b) - n2

    return f


def _scalar_sup(fv, lim0: float, lim_inf: float) -> tuple[float, float, dict]:
    """sup over z > 0 of a vectorized scalar objective, with both limits included."""
    u = np.linspace(math.log(Z_MIN), math.log(Z_MAX), SCALAR_GRID)
    vals = fv(np.exp(u))
    i = int(np.argmax(vals))
    lo, hi = u[max(i - 1, 0)], u[min(i + 1, len(u) - 1)]
    xr, fr = regions.golden_vec(lambda x: fv(np.exp(x)), np.array([lo]), np.array([hi]), 80)
    cands = [(float(vals[i]), math.exp(u[i])), (float(fr[0]), math.exp(float(xr[0]))),
             (lim0, 0.0), (lim_inf, math.inf)]
    best, arg = max(cands, key=lambda c: c[0])
    return best, arg, {"sigma_z_to_0": lim0, "sigma_z_to_inf": lim_inf}


def _chol_param(theta: np.ndarray, ell: int) -> np.ndarray:
    L = np.zeros((ell, ell))
    L[np.tril_indices(ell)] = theta
    idx = np.diag_indices(ell)
    L[idx] = np.exp(np.clip(L[idx], -300, 300))
    return L @ L.T


def _free_param(theta: np.ndarray, ell: int) -> np.ndarray:
    L = np.zeros((ell, ell))
    L[np.tril_indices(ell)] = theta
    return L @ L.T


def _nm(neg, th0, n):
    opts = {"xatol": 1e-10, "fatol": 1e-13, "maxiter": 1000 * n, "maxfev": 2000 * n}
    res = minimize(neg, th0, method="Nelder-Mead", options=opts)
    return minimize(neg, res.x, method="Nelder-Mead", options=opts)


def _screen(f, ell: int, n: int = 3000, keep: int = 4) -> list[np.ndarray]:
    """Best few of a seeded random sample of Sigma_Z = B B^T, ranks 1..ell, scales 1e-4..1e4."""
    rng = np.random.default_rng(12345)
    scored = []
    for i in range(n):
        rank = 1 + i % ell
        b = rng.standard_normal((ell, rank)) * math.sqrt(10.0 ** rng.uniform(-4, 4))
        z = b @ b.T
        v = f(z)
        if math.isfinite(v):
            scored.append((v, i, z))
    scored.sort(key=lambda s: (-s[0], s[1]))
    return [z + 1e-9 * np.trace(z) * np.eye(ell) for _, _, z in scored[:keep]]


def _matrix_sup(f, ell: int, seeds: list[np.ndarray], polish: int = 3) -> tuple[float, np.ndarray]:
    """Multistart Nelder-Mead over Sigma_Z = L L^T.

    Starts are searched with an exponentiated diagonal (Sigma_Z strictly
    positive definite).  The best few are then polished with a free
    diagonal, which reaches the boundary of the cone where the supremum is
    often approached.
    """
    tril = np.tril_indices(ell)
    diag = tril[0] == tril[1]

    def wrap(param):
        def neg(theta):
            v = f(param(theta, ell))
            return -v if math.isfinite(v) else 1e300
        return neg

    neg_exp, neg_free = wrap(_chol_param), wrap(_free_param)
    found = []
    for z0 in list(seeds) + _screen(f, ell):
        th0 = np.linalg.cholesky(z0)[tril].copy()
        th0[diag] = np.log(th0[diag])
        res = _nm(neg_exp, th0, len(th0))
        found.append((-res.fun, len(found), res.x))
    found.sort(key=lambda s: (-s[0], s[1]))
    best_val, best_z = found[0][0], _chol_param(found[0][2], ell)
    for _, _, x in found[:polish]:
        th1 = x.copy()
        th1[diag] = np.exp(np.clip(th1[diag], -300, 300))
        res = _nm(neg_free, th1, len(th1))
        if -res.fun > best_val:
            best_val, best_z = -res.fun, _free_param(res.x, ell)
    return best_val, best_z


def _seeds(ell: int) -> list[np.ndarray]:
    return [t * np.eye(ell) for t in STARTS]


def p_star(kappa: float, sigma_s, d1, d2, n1: float, n2: float) -> BoundResult:
    """Smallest power for which the source region fits in kappa times the G-BC region.

    Singular D1 makes the first ratio unbounded and returns +inf.
    """
    if not (kappa > 0 and math.isfinite(kappa)):
        raise ValueError(f"kappa must be positive, got {kappa}")
    GaussianChannel(0.0, float(n1), float(n2))
    s, d1, d2 = _check_distortions(sigma_s, d1, d2)
    if not loewner_leq(d1, d2):
        raise ValueError("distortions must satisfy D1 ⪯ D2")
    ell = s.shape[0]
    ls = _ld(s)
    if min_eig(d1) < 1e-12:
        return BoundResult(math.inf, None, {"sigma_z_to_0": math.inf, "sigma_z_to_inf": math.inf},
                           {"note": "singular D1"})
    f = _pstar_objective(s, d1, d2, n1, n2, kappa)
    lim_inf = n1 * math.exp((ls - _ld(d1)) / kappa) - n1
    lim0 = n2 * math.exp((ls - _ld(d2)) / kappa) - n2 if min_eig(d2) > 1e-12 else math.inf
    if ell == 1:
        sv, a, b = float(s[0, 0]), float(d1[0, 0]), float(d2[0, 0])

        def fv(z):
            return (n1 * (sv * (a + z) / (a * (b + z))) ** (1 / kappa)
                    + (n2 - n1) * ((sv + z) / (b + z)) ** (1 / kappa) - n2)

        val, arg, ends = _scalar_sup(fv, lim0, lim_inf)
        z = None if arg is None else [[arg]] if math.isfinite(arg) else [[None]]
        return BoundResult(max(val, 0.0), z, ends)
    val, z = _matrix_sup(f, ell, _seeds(ell))
    ends = {"sigma_z_to_0": lim0, "sigma_z_to_inf": lim_inf}
    best = max(val, lim0, lim_inf)
    zout = z.tolist() if best == val else None
    return BoundResult(max(best, 0.0), zout, ends)


def p_lower_bound_rect(kappa: float, sigma_s, theta1, theta2, n1: float, n2: float) -> BoundResult:
    """Power bound when receiver i accepts any D_i with 0 ⪯ D_i ⪯ Theta_i.

    The objective is nonincreasing in each D_i, so the infimum over the two
    rectangles sits at (Theta1, Theta2).
    """
    return p_star(kappa, sigma_s, theta1, theta2, n1, n2)


def _partitioned_objective(s, lam1, lam2, l1, n1, n2, kappa):
    s2 = s[l1:, l1:]

    def f(z):
        z1, z2 = z[:l1, :l1], z[l1:, l1:]
        a = (_ld(s + z) - _ld(lam1 + z1) - _ld(lam2 + z2)) / kappa
        b = (_ld(s2 + z2) - _ld(lam2 + z2)) / kappa
        return n1 * math.exp(a) + (n2 - n1) * math.exp(b) - n2

    return f


def p_lower_bound_partitioned(kappa: float, sigma_s, lam1, lam2, n1: float, n2: float) -> BoundResult:
    """Bound for a source split into two blocks with D_{i,i} ⪯ Lambda_i.

    Reports the supremum over all Sigma_Z > 0 and, for comparison, the
    supremum over block-diagonal Sigma_Z only.
    """
    if not (kappa > 0 and math.isfinite(kappa)):
        raise ValueError(f"kappa must be positive, got {kappa}")
    GaussianChannel(0.0, float(n1), float(n2))
    s = check_spd(sigma_s, "sigma_s")
    lam1 = check_spd(lam1, "Lambda1")
    lam2 = check_spd(lam2, "Lambda2")
    l1, l2 = lam1.shape[0], lam2.shape[0]
    if l1 + l2 != s.shape[0]:
        raise ValueError(f"block sizes {l1}+{l2} do not match dimension {s.shape[0]}")
    ell = s.shape[0]
    f = _partitioned_objective(s, lam1, lam2, l1, n1, n2, kappa)
    s2 = s[l1:, l1:]
    lim0 = f(np.zeros((ell, ell)))
    ends = {"sigma_z_to_0": lim0, "sigma_z_to_inf": 0.0}

    # block-diagonal search: Sigma_Z = diag(Z1, Z2)
    def f_bd(theta):
        k1 = l1 * (l1 + 1) // 2
        z = np.zeros((ell, ell))
        z[:l1, :l1] = _chol_param(theta[:k1], l1)
        z[l1:, l1:] = _chol_param(theta[k1:], l2)
        return f(z)

    tri1, tri2 = np.tril_indices(l1), np.tril_indices(l2)
    k1 = len(tri1[0])
    diag_mask = np.concatenate([tri1[0] == tri1[1], tri2[0] == tri2[1]])
    best_bd, best_bd_z = max(lim0, 0.0), None
    for t1 in STARTS[::2]:
        for t2 in STARTS[::2]:
            th0 = np.where(diag_mask, np.log(np.sqrt(np.concatenate([np.full(k1, t1), np.full(len(tri2[0]), t2)]))), 0.0)
            res = minimize(lambda th: -f_bd(th), th0, method="Nelder-Mead",
                           options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 20000})
            if -res.fun > best_bd:
                best_bd, best_bd_z = -res.fun, res.x
    # one block sent to infinity leaves a point-to-point bound on the other
    z2_grid = np.geomspace(Z_MIN, Z_MAX, 801)
    for t in z2_grid:
        z2 = t * np.eye(l2)
        v = n2 * math.exp((_ld(s2 + z2) - _ld(lam2 + z2)) / kappa) - n2
        best_bd = max(best_bd, v)
    seeds = _seeds(ell)
    if best_bd_z is not None:
        z = np.zeros((ell, ell))
        z[:l1, :l1] = _chol_param(best_bd_z[:k1], l1)
        z[l1:, l1:] = _chol_param(best_bd_z[k1:], l2)
        seeds.append(z + 1e-12 * np.eye(ell))
    full, zf = _matrix_sup(f, ell, seeds)
    value = max(full, best_bd, lim0, 0.0)
    return BoundResult(value, zf.tolist() if value == full else None, ends,
                       {"restricted_value": max(best_bd, 0.0),
                        "blocks": {"sigma_z1": zf[:l1, :l1].tolist(), "sigma_z2": zf[l1:, l1:].tolist()}})
