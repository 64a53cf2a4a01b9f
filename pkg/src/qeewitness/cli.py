"""Command line entry point.

Exit codes: 0 success, 2 invalid arguments, 3 numerical invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .core import env_from_theta, env_mixed
from .harness import MIXED_C0, PURE_THETA, SweepConfig, run_sweep, write_csv, write_json
from .photonics import (
    IDEAL_VISIBILITY,
    MEASURED_T_H,
    MEASURED_T_V,
    MEASURED_VISIBILITY,
    ImperfectionParams,
)
from .protocol import SecondStep, feed_forward_witness, witness
from .qmath import InvariantError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3

_FAMILIES = {"pure": PURE_THETA, "mixed": MIXED_C0}


class _UsageError(Exception):
    pass


def parse_env(spec: str):
    kind, sep, value = spec.partition(":")
    if not sep:
        raise _UsageError(f"--env must look like pure:<theta> or mixed:<c0>, got {spec!r}")
    try:
        x = float(value)
    except ValueError:
        raise _UsageError(f"not a number: {value!r}") from None
    if kind == "pure":
        return env_from_theta(x)
    if kind == "mixed":
        return env_mixed(x)
    raise _UsageError(f"unknown environment kind {kind!r}")


def _add_sweep_args(p: argparse.ArgumentParser, th, tv, vis, vid) -> None:
    p.add_argument("--family", choices=sorted(_FAMILIES), required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="number of grid points")
    p.add_argument("--th", type=float, default=th, help="PPBS transmittivity for H")
    p.add_argument("--tv", type=float, default=tv, help="PPBS transmittivity for V")
    p.add_argument("--vis", type=float, default=vis, help="measured HOM visibility")
    p.add_argument("--vid", type=float, default=vid, help="ideal HOM visibility")
    p.add_argument("--shots", type=float, required=True)
    p.add_argument("--mc-samples", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeewitness", description="Qubit-environment entanglement witness simulator"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("witness", help="evaluate the ideal witness for one environment")
    w.add_argument("--env", required=True, help="pure:<theta> or mixed:<c0>")
    w.add_argument("--step2", choices=("cz", "cy"), default="cz")
    w.add_argument("--feed-forward", action="store_true")

    s = sub.add_parser("sweep", help="witness sweep with Monte Carlo error bars")
    _add_sweep_args(s, th=1.0, tv=1.0, vis=None, vid=IDEAL_VISIBILITY)
    n = sub.add_parser("noise-curve", help="sweep with the measured setup parameters")
    _add_sweep_args(n, th=MEASURED_T_H, tv=MEASURED_T_V, vis=MEASURED_VISIBILITY, vid=IDEAL_VISIBILITY)
    return parser


def _cmd_witness(args, out) -> None:
    env = parse_env(args.env)
    step2 = SecondStep(args.step2)
    res = feed_forward_witness(env, step2) if args.feed_forward else witness(env, step2)
    json.dump(res.as_dict(), out)
    out.write("\n")


def _cmd_sweep(args, out) -> None:
    if args.steps < 1:
        raise _UsageError("--steps must be at least 1")
    vis = args.vid if args.vis is None else args.vis
    params = ImperfectionParams(args.th, args.tv, vis, args.vid)
    cfg = SweepConfig(
        family=_FAMILIES[args.family],
        grid=tuple(np.linspace(args.start, args.stop, args.steps)),
        params=params,
        shots=args.shots,
        mc_samples=args.mc_samples,
        seed=args.seed,
    )
    records = run_sweep(cfg)
    writer = write_csv if args.format == "csv" else write_json
    if args.out == "-":
        writer(records, out)
    else:
        with open(args.out, "w", newline="") as fh:
            writer(records, fh)


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "witness":
            _cmd_witness(args, out)
        else:
            _cmd_sweep(args, out)
    except InvariantError as exc:
        print(f"qeewitness: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (_UsageError, ValueError, OSError) as exc:
        print(f"qeewitness: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
