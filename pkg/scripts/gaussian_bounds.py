"""Scalar P* against bandwidth ratio, and full vs block-diagonal partitioned bounds.

    python3 scripts/gaussian_bounds.py
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from bcsep.gaussian import p_lower_bound_partitioned, p_star


@dataclass(frozen=True)
class ScalarConfig:
    sigma_s: float = 1.0
    d1: float = 0.1
    d2: float = 0.3
    n1: float = 1.0
    n2: float = 2.0
    kappas: tuple = (0.5, 1.0, 1.5, 2.0, 3.0)


@dataclass(frozen=True)
class PartitionedConfig:
    correlations: tuple = (0.0, 0.3, 0.6, 0.9)
    lam1: float = 0.3
    lam2: float = 0.5
    n1: float = 1.0
    n2: float = 2.0
    kappa: float = 1.0


@dataclass(frozen=True)
class Config:
    scalar: ScalarConfig = field(default_factory=ScalarConfig)
    partitioned: PartitionedConfig = field(default_factory=PartitionedConfig)


def main(cfg: Config = Config()) -> None:
    s = cfg.scalar
    print("kappa  p_star  sigma_z_to_0  sigma_z_to_inf")
    for k in s.kappas:
        r = p_star(k, s.sigma_s, s.d1, s.d2, s.n1, s.n2)
        e = r.endpoint_values
        print(f"{k:5.2f}  {r.value:.6f}  {e['sigma_z_to_0']:.6f}  {e['sigma_z_to_inf']:.6f}")
    p = cfg.partitioned
    print("\nrho  full  block_diagonal")
    for rho in p.correlations:
        S = np.array([[1.0, rho], [rho, 1.0]])
        r = p_lower_bound_partitioned(p.kappa, S, [[p.lam1]], [[p.lam2]], p.n1, p.n2)
        print(f"{rho:.2f}  {r.value:.6f}  {r.extra['restricted_value']:.6f}")


if __name__ == "__main__":
    main()
