"""Sweep d2 at fixed d1 and report kappa_star, kappa_dagger and the slope branch as CSV.

    python3 scripts/kappa_sweep.py --channel bsbc 0.15 0.2 --d1 0.035 --steps 25
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from bcsep.binary_bc import BinaryBroadcastSpec
from bcsep.source_binary import check_kappa_gap


@dataclass(frozen=True)
class SweepConfig:
    kind: str = "bsbc"
    a: float = 0.15
    b: float = 0.2
    d1: float = 0.035
    d2_max: float = 0.2
    steps: int = 25

    def spec(self) -> BinaryBroadcastSpec:
        return getattr(BinaryBroadcastSpec, self.kind)(self.a, self.b)


def sweep(cfg: SweepConfig):
    spec = cfg.spec()
    for d2 in np.linspace(cfg.d1, cfg.d2_max, cfg.steps):
        v = check_kappa_gap((cfg.d1, float(d2)), spec, with_compound=False)
        yield float(d2), v.kappa_star, v.kappa_dagger, v.gap, v.branch.value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--channel", nargs=3, metavar=("KIND", "A", "B"), default=["bsbc", "0.15", "0.2"])
    ap.add_argument("--d1", type=float, default=0.035)
    ap.add_argument("--d2-max", type=float, default=0.2)
    ap.add_argument("--steps", type=int, default=25)
    args = ap.parse_args()
    kind, a, b = args.channel
    cfg = SweepConfig(kind, float(a), float(b), args.d1, args.d2_max, args.steps)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["d2", "kappa_star", "kappa_dagger", "gap", "branch"])
    for row in sweep(cfg):
        w.writerow([f"{x:.10g}" if isinstance(x, float) else x for x in row])


if __name__ == "__main__":
    main()
