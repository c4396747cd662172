"""Command-line interface: ``build``, ``decode`` and ``sweep``.

Exit codes: 0 success, 2 usage or input error, 3 decoder resource exhaustion.
A ``--config`` file of ``key = value`` lines supplies defaults; explicit
flags win.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from .decoder import DEFAULT_MAX_ITERS, Decoder, Status
from .lattice import build
from .sim import SWEEP_FIELDS, sweep, write_sweep_csv, write_trials_csv

log = logging.getLogger("colorcode_pcwd")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _float_list(text: str) -> List[float]:
    return [float(x) for x in text.replace(",", " ").split()]


def read_config(path) -> Dict[str, str]:
    cfg = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        cfg[key.replace("-", "_")] = value
    return cfg


def read_syndrome(path, length: int) -> np.ndarray:
    text = "".join(Path(path).read_text().split())
    if len(text) != length or set(text) - {"0", "1"}:
        raise UsageError(f"syndrome file must hold one line of {length} 0/1 characters")
    return np.array([int(c) for c in text], dtype=np.uint8)


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with default option values")
    common.add_argument("-v", "--verbose", action="count", default=0)

    ap = argparse.ArgumentParser(prog="colorcode-pcwd", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="write H, H_R, H_G, H_B for one L")
    b.add_argument("--L", type=int, required=True)
    b.add_argument("--out", required=True, help="output directory")

    d = sub.add_parser("decode", parents=[common], help="decode one syndrome file")
    d.add_argument("--L", type=int, required=True)
    d.add_argument("--p", type=float, required=True, help="depolarizing probability")
    d.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    d.add_argument("syndrome", help="file with one line of 9L^2 0/1 characters")

    s = sub.add_parser("sweep", parents=[common], help="Monte Carlo logical error rates")
    s.add_argument("--L", type=_int_list, required=True, help="e.g. 1,2,3")
    s.add_argument("--p", type=_float_list, required=True, help="e.g. 0.02,0.04")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.add_argument("--trials-out", help="optional per-trial CSV path")
    return ap, {"build": b, "decode": d, "sweep": s}


def _apply_config(subparsers, argv: List[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or not known.command:
        return
    cfg = read_config(known.config)
    subparser = subparsers.get(known.command)
    if subparser is None:
        return
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, value in cfg.items():
        if key not in actions:
            raise UsageError(f"unknown config key {key!r} for {known.command}")
        conv = actions[key].type or str
        defaults[key] = conv(value)
        actions[key].required = False
    subparser.set_defaults(**defaults)


def cmd_build(args) -> int:
    if args.L < 1:
        raise UsageError("--L must be >= 1")
    lat = build(args.L)
    for path in lat.write_matrices(args.out):
        log.info("wrote %s", path)
    print(f"L={lat.L} n={lat.n_faces} checks={lat.n_vertices} rank={lat.rowspace.rank} out={args.out}")
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.L < 1:
        raise UsageError("--L must be >= 1")
    if not 0.0 < args.p < 0.75:
        raise UsageError("--p must lie in (0, 0.75)")
    lat = build(args.L)
    s = read_syndrome(args.syndrome, lat.n_vertices)
    out = Decoder(lat, args.max_iters).decode(s, args.p)
    print("estimate:", " ".join(str(i) for i in np.flatnonzero(out.estimate)))
    print("weight:", int(out.estimate.sum()))
    print("stage:", out.stage.value)
    print("status:", out.status.value)
    print("candidates:", out.n_candidates)
    if out.status is Status.RESOURCE_EXHAUSTED:
        return EXIT_EXHAUSTED
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.L or not args.p:
        raise UsageError("--L and --p lists must be nonempty")
    if any(L < 1 for L in args.L) or any(not 0.0 <= p < 0.75 for p in args.p) or args.trials < 1:
        raise UsageError("invalid L, p or trial count")
    results = sweep(
        args.L, args.p, args.trials, args.seed, args.max_iters, args.jobs, keep_records=bool(args.trials_out)
    )
    if args.out:
        write_sweep_csv(results, args.out)
        log.info("wrote %s", args.out)
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=SWEEP_FIELDS)
        w.writeheader()
        for r in results:
            w.writerow(r.row())
    if args.trials_out:
        write_trials_csv(results, args.trials_out)
    return EXIT_OK


COMMANDS = {"build": cmd_build, "decode": cmd_decode, "sweep": cmd_sweep}


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap, subparsers = _parser()
    try:
        _apply_config(subparsers, argv)
        args = ap.parse_args(argv)
    except (UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
