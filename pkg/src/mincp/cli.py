"""Command-line front end: ``mincp mine|stats|bench``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid parameters,
3 bench cells disagreeing on their output, 4 mining run aborted by --timeout.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import bench as benchmod
from .dataio import (
    ParseError,
    canonical,
    dataset_stats,
    export_feature_matrix,
    load,
    write_patterns,
)
from .miner import BranchOrder, MinerConfig, Ordering, SearchAborted, mine
from .model import MiningParams
from .oracle import MAX_LITERALS, enumerate_minimal


class UsageError(Exception):
    pass


def resolve_support(spec: str, n: int) -> int:
    """``"3"`` -> 3, ``"0.02x"`` -> ceil(0.02 * n)."""
    try:
        if spec.endswith("x"):
            return math.ceil(Fraction(spec[:-1]) * n)
        value = int(spec)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad support value {spec!r}") from None
    return value


def _real(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("inputs", nargs="+", metavar="PATH",
                   help="labeled file, or positive and negative FIMI files")
    p.add_argument("--pos-sup", default="1", help="min positive support: int or fraction like 0.02x")
    p.add_argument("--neg-sup", default="0", help="max negative support: int or fraction like 0.1x")
    p.add_argument("--min-gr", type=_real, default=math.inf, help="min growth rate (real or inf)")
    p.add_argument("--min-chi", type=_real, default=0.0, help="min chi-square")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--negation", action="store_true", help="allow negated items in patterns")
    p.add_argument("--branch-order", choices=[b.value for b in BranchOrder], default="include-first")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", "-o", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mincp", description="Minimal constrained pattern mining")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine minimal constrained patterns")
    _add_common(p)
    p.add_argument("--ordering", choices=[o.value for o in Ordering], default="dynamic")
    p.add_argument("--pruning", choices=list(benchmod.PRUNING), default="both")
    p.add_argument("--engine", choices=["fast", "oracle"], default="fast")
    p.add_argument("--features-out", default=None, help="write a CSV pattern-feature matrix")
    p.add_argument("--timeout", type=float, default=None)

    p = sub.add_parser("stats", help="dataset statistics")
    p.add_argument("inputs", nargs="+", metavar="PATH")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("bench", help="compare ordering x pruning configurations")
    _add_common(p)
    p.add_argument("--ordering", action="append", choices=[o.value for o in Ordering],
                   help="repeatable; default: all orderings")
    p.add_argument("--pruning", action="append", choices=list(benchmod.PRUNING),
                   help="repeatable; default: all pruning settings")
    p.add_argument("--timeout", type=float, default=None, help="seconds per cell")
    p.add_argument("--node-limit", type=int, default=None, help="nodes per cell")
    return parser


def _load(args):
    if len(args.inputs) > 2:
        raise UsageError("expected one labeled file or two FIMI files")
    return load(args.inputs, negation=getattr(args, "negation", False))


def _params(args, db) -> MiningParams:
    try:
        params = MiningParams(
            sigma_plus=resolve_support(args.pos_sup, db.n_plus),
            sigma_minus=resolve_support(args.neg_sup, db.n_minus),
            theta=args.min_gr,
            gamma=args.min_chi,
            max_len=args.max_len,
        )
        params.check(db)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return params


def _emit(data: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def run_mine(args) -> int:
    db = _load(args)
    params = _params(args, db)
    if args.engine == "oracle":
        if len(db.literals()) > MAX_LITERALS:
            raise UsageError(f"oracle engine supports at most {MAX_LITERALS} literals")
        patterns = enumerate_minimal(db, params)
        print(f"engine=oracle patterns={len(patterns)}", file=sys.stderr)
    else:
        lb, nc = benchmod.PRUNING[args.pruning]
        config = MinerConfig(ordering=args.ordering, prune_lb=lb, prune_nc=nc,
                             branch_order=args.branch_order, time_limit=args.timeout)
        patterns, stats = mine(db, params, config)
        summary = " ".join(f"{k}={v}" for k, v in stats.counters().items())
        print(f"{summary} wall_time={stats.wall_time:.3f}s", file=sys.stderr)
        if stats.nc_disabled:
            print("note: conservative-item pruning disabled (unsafe for this chi-square setting)",
                  file=sys.stderr)
    _emit(write_patterns(patterns, args.format), args.output)
    if args.features_out:
        with open(args.features_out, "wb") as fh:
            fh.write(export_feature_matrix(db, canonical(patterns)))
    return 0


def run_stats(args) -> int:
    db = _load(args)
    st = dataset_stats(db)
    if args.format == "json":
        out = json.dumps(st) + "\n"
    else:
        out = (
            f"items\t{st['items']}\nexamples\t{st['examples']}\n"
            f"positives\t{st['positives']}\nnegatives\t{st['negatives']}\n"
            f"density\t{st['density']:.1f}%\n"
        )
    _emit(out.encode(), args.output)
    return 0


def run_bench(args) -> int:
    db = _load(args)
    params = _params(args, db)
    configs = benchmod.grid_configs(
        args.ordering or [o.value for o in Ordering],
        args.pruning or list(benchmod.PRUNING),
        branch_order=args.branch_order,
        time_limit=args.timeout,
        node_limit=args.node_limit,
    )
    cells = benchmod.run_grid(db, params, configs)
    if args.format == "json":
        records = []
        for c in cells:
            rec = {"config": c.config.label, "completed": c.completed, "aborted": c.aborted,
                   "patterns": c.n_patterns}
            if c.completed:
                rec.update(c.stats.counters(), wall_time=c.stats.wall_time)
            records.append(rec)
        out = json.dumps(records, indent=1) + "\n"
    else:
        out = benchmod.format_table(cells)
    _emit(out.encode(), args.output)
    if not benchmod.consistent(cells):
        print("error: completed configurations produced different pattern sets", file=sys.stderr)
        return 3
    return 0


COMMANDS = {"mine": run_mine, "stats": run_stats, "bench": run_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SearchAborted as exc:
        print(f"error: search aborted: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
