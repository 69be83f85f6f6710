"""Small symmetric-matrix helpers (dimension at most 4) on top of numpy.linalg."""
from __future__ import annotations

import numpy as np

MAX_DIM = 4
SYM_TOL = 1e-10
EIG_TOL = 1e-10


class NotPSDError(ValueError):
    """Raised when a matrix fails the PSD/PD check; carries the offending eigenvalue."""

    def __init__(self, name: str, eigenvalue: float, strict: bool):
        kind = "positive definite" if strict else "positive semidefinite"
        super().__init__(f"{name} is not {kind}: smallest eigenvalue {eigenvalue:.6g}")
        self.eigenvalue = eigenvalue


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce a scalar or nested list to a square float array of dimension <= 4."""
    a = np.asarray(m, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not 1 <= a.shape[0] <= MAX_DIM:
        raise ValueError(f"{name} dimension must be between 1 and {MAX_DIM}, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def check_spd(m, name: str = "matrix", strict: bool = True) -> np.ndarray:
    """Validate symmetry and definiteness; returns the symmetrized array."""
    a = as_matrix(m, name)
    if np.max(np.abs(a - a.T)) > SYM_TOL * max(1.0, np.max(np.abs(a))):
        raise ValueError(f"{name} is not symmetric")
    a = 0.5 * (a + a.T)
    lo = float(np.linalg.eigvalsh(a)[0])
    if (strict and lo < EIG_TOL) or (not strict and lo < -EIG_TOL):
        raise NotPSDError(name, lo, strict)
    return a


def min_eig(a) -> float:
    return float(np.linalg.eigvalsh(np.asarray(a, dtype=float))[0])


def loewner_leq(a, b, tol: float = EIG_TOL) -> bool:
    """a ⪯ b, i.e. b - a is PSD up to ``tol``."""
    return min_eig(np.asarray(b) - np.asarray(a)) >= -tol


def det(a) -> float:
    return float(np.linalg.det(as_matrix(a)))


def inv(a) -> np.ndarray:
    a = as_matrix(a)
    if abs(np.linalg.det(a)) <= 1e-300 or np.linalg.cond(a) > 1e15:
        raise ValueError("matrix is singular to working precision")
    return np.linalg.inv(a)


def block(a, split: int, i: int, j: int) -> np.ndarray:
    """Block (i, j) of ``a`` partitioned after ``split`` rows and columns."""
    a = np.asarray(a, dtype=float)
    if not 0 < split < a.shape[0]:
        raise ValueError(f"split must lie strictly inside 1..{a.shape[0] - 1}")
    rows = slice(0, split) if i == 0 else slice(split, None)
    cols = slice(0, split) if j == 0 else slice(split, None)
    return a[rows, cols]
