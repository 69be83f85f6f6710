"""Scalar information-theoretic primitives and discrete-channel oracles.

Everything is in bits.  ``binary_entropy`` and ``bconv`` accept numpy arrays
as well as scalars, because the region builders evaluate them on whole
parameter grids.
"""
from __future__ import annotations

import math

import numpy as np

PROB_SLACK = 1e-12
_EDGE = 1e-12


def _check_prob(x, name="p"):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < -PROB_SLACK) or np.any(arr > 1 + PROB_SLACK):
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
    return np.clip(arr, 0.0, 1.0)


def _as_output(arr, like):
    if np.ndim(like) == 0:
        return float(arr)
    return arr


def _hb(p: np.ndarray) -> np.ndarray:
    # 0 log 0 := 0; the log1p branch keeps precision for p near 0 or 1
    out = np.zeros_like(p, dtype=float)
    inner = (p > 0.0) & (p < 1.0)
    q = p[inner]
    small = q < 0.5
    v = np.empty_like(q)
    a = q[small]
    v[small] = -a * np.log2(a) - np.log1p(-a) * (1.0 - a) / math.log(2.0)
    b = 1.0 - q[~small]
    v[~small] = -b * np.log2(b) - np.log1p(-b) * (1.0 - b) / math.log(2.0)
    out[inner] = v
    return out


def binary_entropy(p):
    """H_b(p) = -p log2 p - (1-p) log2 (1-p)."""
    arr = _check_prob(p)
    return _as_output(_hb(np.atleast_1d(arr)).reshape(arr.shape), p)


def binary_entropy_inv(h) -> float:
    """Inverse of H_b restricted to [0, 1/2], by bisection.

    Bisection runs until the bracket stops shrinking, which is well below the
    1e-12 absolute tolerance on p.
    """
    h = float(h)
    if not math.isfinite(h) or h < -PROB_SLACK or h > 1 + PROB_SLACK:
        raise ValueError(f"entropy value must lie in [0, 1], got {h!r}")
    h = min(max(h, 0.0), 1.0)
    if h == 0.0:
        return 0.0
    if h == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if binary_entropy(mid) < h:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bconv(a, b):
    """Binary convolution a*b = a(1-b) + (1-a)b."""
    x = _check_prob(a, "a")
    y = _check_prob(b, "b")
    out = x * (1.0 - y) + (1.0 - x) * y
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(out)
    return out


def _hb_raw(p):
    # unchecked variant for the hot loops of the region builders
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    return _hb(np.atleast_1d(p)).reshape(p.shape)


# -- discrete channels -------------------------------------------------------

def check_channel(W) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[0] < 1 or W.shape[1] < 1:
        raise ValueError("channel matrix must be 2-D (inputs x outputs)")
    if np.any(~np.isfinite(W)) or np.any(W < 0):
        raise ValueError("channel matrix entries must be finite and nonnegative")
    if np.any(np.abs(W.sum(axis=1) - 1.0) > 1e-12):
        raise ValueError("every row of the channel matrix must sum to 1")
    return W


def bsc(p: float) -> np.ndarray:
    p = float(_check_prob(p))
    return np.array([[1 - p, p], [p, 1 - p]])


def bec(e: float) -> np.ndarray:
    """Binary erasure channel with outputs ordered (0, 1, e)."""
    e = float(_check_prob(e, "e"))
    return np.array([[1 - e, 0.0, e], [0.0, 1 - e, e]])


def _divergences(W: np.ndarray, r: np.ndarray) -> np.ndarray:
    """D(W(.|x) || rW) in bits for every input letter x."""
    q = r @ W
    # q > 0 wherever W > 0 unless r W underflowed; such terms are below W log2(1/r_x) ~ 0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where((W > 0) & (q > 0), W * np.log2(W / q), 0.0)
    return terms.sum(axis=1)


def mutual_information(px, W) -> float:
    W = check_channel(W)
    px = np.asarray(px, dtype=float)
    used = px > 0  # letters with zero mass may diverge against the output law
    return float(px[used] @ _divergences(W, px)[used])


def discrete_capacity(W, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """Channel capacity in bits via Blahut-Arimoto.

    Stops once the gap between the running upper bound max_x D(W_x||q) and the
    running lower bound I(r; W) drops below ``tol``.
    """
    W = check_channel(W)
    r = np.full(W.shape[0], 1.0 / W.shape[0])
    lower, upper = -np.inf, np.inf
    for _ in range(max_iter):
        D = _divergences(W, r)
        lower = max(lower, float(r @ D))
        upper = min(upper, float(D.max()))
        if upper - lower < tol:
            break
        r = r * np.exp2(D)
        r /= r.sum()
    return max(lower, 0.0)


def compound_capacity(W1, W2, step: float = 1e-3) -> float:
    """max over p_X of min(I(X;Y1), I(X;Y2)) for binary-input channels.

    The objective is concave in p_X(0); a grid pass locates the best cell and a
    golden-section search polishes inside the neighbouring cells.
    """
    W1 = check_channel(W1)
    W2 = check_channel(W2)
    if W1.shape[0] != W2.shape[0]:
        raise ValueError("channels must share the input alphabet")
    if W1.shape[0] != 2:
        raise ValueError("compound_capacity supports binary input alphabets only")

    def objective(a: float) -> float:
        px = np.array([a, 1.0 - a])
        return min(mutual_information(px, W1), mutual_information(px, W2))

    grid = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    vals = np.array([objective(a) for a in grid])
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    best = golden_max(objective, lo, hi, tol=1e-12)[1]
    return max(float(vals[i]), best)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200):
    """Golden-section search for a unimodal maximum; returns (x, f(x))."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    best = max([(f(lo), lo), (fc, c), (fd, d), (f(hi), hi)])
    return best[1], best[0]


def bisect_root(f, lo: float, hi: float, max_iter: int = 200) -> float:
    """Bisection on a sign-changing bracket, run to floating-point resolution."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("bracket does not change sign")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
