"""Command-line front end: ``bcsep {region,kappa,gaussian,verify}``.

Exit codes: 0 success, 1 failed verification, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import checks, gaussian, source_binary as sb
from .binary_bc import BinaryBroadcastSpec, SideInfo, capacity_region
from .regions import _jsonable

SCHEMA = 1


class InputError(ValueError):
    pass


def _dump(payload: dict) -> str:
    payload = {"schema": SCHEMA, **payload}
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True)


def _add_channel_flags(p: argparse.ArgumentParser, gaussian_ok: bool = False) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bsbc", nargs=2, type=float, metavar=("P1", "P2"))
    g.add_argument("--bebc", nargs=2, type=float, metavar=("E1", "E2"))
    g.add_argument("--bscbec", nargs=2, type=float, metavar=("P", "E"))
    if gaussian_ok:
        g.add_argument("--gbc", nargs=3, type=float, metavar=("P", "N1", "N2"))


def _binary_spec(args) -> BinaryBroadcastSpec:
    if args.bsbc:
        return BinaryBroadcastSpec.bsbc(*args.bsbc)
    if args.bebc:
        return BinaryBroadcastSpec.bebc(*args.bebc)
    return BinaryBroadcastSpec.bscbec(*args.bscbec)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bcsep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("region", help="capacity region boundary of a broadcast channel")
    _add_channel_flags(r, gaussian_ok=True)
    r.add_argument("--mode", choices=[m.value for m in SideInfo], default="none")
    r.add_argument("--format", choices=["json", "csv"], default="json")
    r.add_argument("--points", type=int, default=512)

    k = sub.add_parser("kappa", help="kappa_star / kappa_dagger verdict for a Hamming distortion pair")
    k.add_argument("d1", type=float)
    k.add_argument("d2", type=float)
    _add_channel_flags(k)

    g = sub.add_parser("gaussian", help="power bounds for the quadratic-Gaussian problem")
    g.add_argument("bound", choices=["pstar", "rect", "partitioned"])
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--scalar", nargs=3, type=float, metavar=("SS", "D1", "D2"),
                     help="source variance and the two distortions (or thresholds)")
    src.add_argument("--matrix-file", type=Path,
                     help="JSON with sigma_s and d1/d2, theta1/theta2 or lambda1/lambda2 (row-major)")
    g.add_argument("--kappa", type=float, default=1.0)
    g.add_argument("--n1", type=float, required=True)
    g.add_argument("--n2", type=float, required=True)

    v = sub.add_parser("verify", help="run the numerical cross-check suite")
    v.add_argument("suite", choices=sorted(checks.SUITES), nargs="?", default="all")
    return parser


def cmd_region(args) -> str:
    if args.points < 2:
        raise InputError("--points must be at least 2")
    if args.gbc:
        region = gaussian.gbc_capacity_region(*args.gbc, mode=args.mode)
    else:
        region = capacity_region(_binary_spec(args), args.mode)
    if args.format == "csv":
        return region.to_csv(args.points).rstrip("\n")
    return _dump(region.to_dict(args.points))


def cmd_kappa(args) -> str:
    spec = _binary_spec(args)
    d = sb.HammingDistortionPair(args.d1, args.d2)
    verdict = sb.check_kappa_gap(d, spec)
    out = verdict.to_dict()
    out["spec"] = spec.label
    out["distortions"] = [d.d1, d.d2]
    if spec.kind.value != "bsbc":
        cf = sb.kappa_star_closed_form(d, spec)
        out["closed_form"] = cf
        if cf is not None and math.isfinite(cf) and math.isfinite(verdict.kappa_star):
            out["closed_form_delta"] = abs(cf - verdict.kappa_star)
    return _dump(out)


def _load_matrices(path: Path, names: tuple[str, str]) -> tuple:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read matrix file {path}: {exc}") from exc
    missing = [k for k in ("sigma_s", *names) if k not in data]
    if missing:
        raise InputError(f"matrix file lacks {', '.join(missing)}")
    return tuple(np.asarray(data[k], dtype=float) for k in ("sigma_s", *names))


def cmd_gaussian(args) -> str:
    names = {"pstar": ("d1", "d2"), "rect": ("theta1", "theta2"), "partitioned": ("lambda1", "lambda2")}[args.bound]
    if args.scalar:
        if args.bound == "partitioned":
            raise InputError("the partitioned bound needs a matrix file with two blocks")
        s, a, b = args.scalar
    else:
        s, a, b = _load_matrices(args.matrix_file, names)
    fn = {"pstar": gaussian.p_star, "rect": gaussian.p_lower_bound_rect,
          "partitioned": gaussian.p_lower_bound_partitioned}[args.bound]
    res = fn(args.kappa, s, a, b, args.n1, args.n2)
    return _dump({"bound": args.bound, "kappa": args.kappa, "n1": args.n1, "n2": args.n2, **res.to_dict()})


def cmd_verify(args) -> tuple[str, int]:
    results = checks.run_suite(args.suite)
    ok = all(r.passed for r in results)
    report = {"suite": args.suite, "passed": ok, "checks": [r.to_dict() for r in results]}
    return _dump(report), 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
        else:
            handler = {"region": cmd_region, "kappa": cmd_kappa, "gaussian": cmd_gaussian}[args.command]
            text, code = handler(args), 0
    except ValueError as exc:  # includes InputError and NotPSDError
        print(f"bcsep: error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
