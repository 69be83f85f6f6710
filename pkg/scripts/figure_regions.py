"""Write boundary CSVs for BSC&BEC(0.3, 0.87) and BSC&BEC(0.3, 0.9) in every side-information mode.

    python3 scripts/figure_regions.py --out figures/
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from bcsep import regions
from bcsep.binary_bc import BinaryBroadcastSpec, capacity_region
from bcsep.infotheory import binary_entropy


@dataclass(frozen=True)
class FigureConfig:
    name: str
    p: float
    e: float
    points: int = 512


FIGURES = (FigureConfig("bscbec_0.3_0.87", 0.3, 0.87), FigureConfig("bscbec_0.3_0.9", 0.3, 0.9))


def triangle(p: float, e: float) -> regions.Region2D:
    """{R2 <= 1-e, R1+R2 <= 1-H(p)}, the time-sharing region C2 is compared against."""
    c1 = 1 - binary_entropy(p)
    return regions.polygon([[0.0, 1 - e], [c1 - (1 - e), 1 - e], [c1, 0.0]])


def write_figure(cfg: FigureConfig, out: Path) -> dict:
    spec = BinaryBroadcastSpec.bscbec(cfg.p, cfg.e)
    curves = {mode: capacity_region(spec, mode) for mode in ("none", "c1", "c2")}
    curves["triangle"] = triangle(cfg.p, cfg.e)
    for label, region in curves.items():
        (out / f"{cfg.name}_{label}.csv").write_text(region.to_csv(cfg.points))
    lam = np.linspace(0.0, 1.0, 2001)
    return {
        "figure": cfg.name,
        "c2_minus_c": float(np.max(curves["c2"].support(lam) - curves["none"].support(lam))),
        "c2_minus_triangle": float(np.max(curves["c2"].support(lam) - curves["triangle"].support(lam))),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--points", type=int, default=512)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for cfg in FIGURES:
        cfg = FigureConfig(cfg.name, cfg.p, cfg.e, args.points)
        s = write_figure(cfg, args.out)
        print(f"{s['figure']}: max support gap C2-C = {s['c2_minus_c']:.4f}, "
              f"C2-triangle = {s['c2_minus_triangle']:.4f}")


if __name__ == "__main__":
    main()
