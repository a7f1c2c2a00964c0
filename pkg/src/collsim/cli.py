"""Command-line front end: generate, verify, dump, cost, and sweep schedules.

Subcommands:
  run     one stats/cost row per (op, algo, k, c) combination
  verify  semantic check per case, PASS/FAIL lines, exit 1 on any FAIL
  dump    the exact event/chunk listing of one schedule
  sweep   CSV cross-product report, optionally rendered to a figure

Exit codes: 0 success / all cases pass, 1 verification failure, 2 usage or
parameter error. Output is deterministic byte-for-byte for identical flags;
the environment variable COLLSIM_SEED is reserved but unused.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import algorithms
from .algorithms import CollectiveParams, InvalidParams, Op
from .cost import CostParams, time_schedule
from .machine import InvalidShape, MachineShape, Placement, build_machine
from .schedule import Round, Schedule, dump_lines, schedule_stats
from .semantics import verify as semantic_verify

OPS = ("bcast", "scatter", "alltoall")
ALGOS = ("fulllane", "klane", "kported")

COLUMNS = (
    "op",
    "algo",
    "k",
    "n",
    "N",
    "p",
    "c",
    "rounds",
    "comm_rounds",
    "off_node_elems",
    "on_node_elems",
    "root_out_elems",
    "root_node_out_elems",
    "modeled_time",
)


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _name_list(valid: tuple[str, ...]):
    def parse(text: str) -> list[str]:
        values = [tok for tok in text.split(",") if tok != ""]
        for v in values:
            if v not in valid:
                raise argparse.ArgumentTypeError(f"{v!r} not one of {', '.join(valid)}")
        if not values:
            raise argparse.ArgumentTypeError("expected at least one name")
        return values

    return parse


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--op", type=_name_list(OPS), default=list(OPS),
                     help="collective(s): bcast, scatter, alltoall (comma list)")
    sub.add_argument("--algo", type=_name_list(ALGOS), default=list(ALGOS),
                     help="algorithm family/families: kported, klane, fulllane (comma list)")
    sub.add_argument("-N", type=int, required=True, help="node count")
    sub.add_argument("-n", type=int, required=True, help="processors per node")
    sub.add_argument("--k", type=_int_list, default=[1],
                     help="port/lane parameter(s), comma list allowed")
    sub.add_argument("--placement", choices=["block", "rr"], default="block",
                     help="rank-to-node placement rule")
    sub.add_argument("--root", type=int, default=0, help="root rank for bcast/scatter")
    sub.add_argument("-c", type=_int_list, default=[1],
                     help="element count(s) per block/payload, comma list allowed")
    sub.add_argument("--full-node-bcast", action="store_true",
                     help="klane bcast: first receipt triggers a whole-node broadcast")
    sub.add_argument("--alpha-inter", type=float, default=1.0)
    sub.add_argument("--beta-inter", type=float, default=0.01)
    sub.add_argument("--alpha-intra", type=float, default=0.3)
    sub.add_argument("--beta-intra", type=float, default=0.002)
    sub.add_argument("--format", choices=["csv", "json"], default="csv")


def _machine_for(args, k: int) -> MachineShape:
    placement = Placement.BLOCK if args.placement == "block" else Placement.ROUND_ROBIN
    return build_machine(args.N, args.n, min(k, args.n), placement)


def _generate(op: str, algo: str, m: MachineShape, k: int, root: int, c: int,
              full_node_bcast: bool = False) -> Schedule:
    if algo == "kported":
        if op == "bcast":
            return algorithms.kported_bcast(m.p, k, root, c)
        if op == "scatter":
            return algorithms.kported_scatter(m.p, k, root, c)
        return algorithms.kported_alltoall(m.p, k, c)
    if algo == "klane":
        if op == "bcast":
            return algorithms.klane_bcast(m, k, root, c, full_node_bcast)
        if op == "scatter":
            return algorithms.klane_scatter(m, k, root, c)
        return algorithms.klane_alltoall(m, c)
    if op == "bcast":
        return algorithms.fulllane_bcast(m, root, c)
    if op == "scatter":
        return algorithms.fulllane_scatter(m, root, c)
    return algorithms.fulllane_alltoall(m, c)


def _cases(args) -> list[tuple[str, str, int, int]]:
    return [
        (op, algo, k, c)
        for op in sorted(set(args.op))
        for algo in sorted(set(args.algo))
        for k in sorted(set(args.k))
        for c in sorted(set(args.c))
    ]


def _build_row(args, op: str, algo: str, k: int, c: int) -> dict:
    m = _machine_for(args, k)
    sched = _generate(op, algo, m, k, args.root, c, args.full_node_bcast)
    stats = schedule_stats(sched, m, root=args.root if op != "alltoall" else 0)
    cp = CostParams(args.alpha_inter, args.beta_inter, args.alpha_intra, args.beta_intra, m.k)
    report = time_schedule(sched, m, cp)
    return {
        "op": op,
        "algo": algo,
        "k": k,
        "n": m.n,
        "N": m.N,
        "p": m.p,
        "c": c,
        "rounds": stats.rounds,
        "comm_rounds": stats.comm_rounds,
        "off_node_elems": stats.off_node_elements,
        "on_node_elems": stats.on_node_elements,
        "root_out_elems": stats.root_out_elements,
        "root_node_out_elems": stats.root_node_out_elements,
        "modeled_time": report.total_time,
    }


def _emit_rows(rows: list[dict], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows))
        return
    print(",".join(COLUMNS))
    for row in rows:
        print(",".join(str(row[col]) for col in COLUMNS))


def _drop_last_event(s: Schedule) -> Schedule:
    if not s.rounds:
        return s
    rounds = list(s.rounds)
    last = rounds[-1]
    events = last.events[:-1]
    if events:
        rounds[-1] = Round(events)
    else:
        rounds.pop()
    return Schedule(tuple(rounds), dict(s.meta))


def cmd_run(args) -> int:
    rows = [_build_row(args, op, algo, k, c) for op, algo, k, c in _cases(args)]
    _emit_rows(rows, args.format)
    return 0


def cmd_sweep(args) -> int:
    rows = [_build_row(args, op, algo, k, c) for op, algo, k, c in _cases(args)]
    _emit_rows(rows, args.format)
    if args.plot:
        from .report import render_sweep_figure

        render_sweep_figure(rows, args.plot)
    return 0


def cmd_verify(args) -> int:
    all_passed = True
    for op, algo, k, c in _cases(args):
        m = _machine_for(args, k)
        root = args.root if op != "alltoall" else None
        sched = _generate(op, algo, m, k, args.root, c, args.full_node_bcast)
        if args.mutate == "drop-last-event":
            sched = _drop_last_event(sched)
        params = CollectiveParams(Op(op), c, root)
        result = semantic_verify(params, m, sched)
        all_passed = all_passed and result.passed
        root_txt = str(root) if root is not None else "-"
        print(f"{'PASS' if result.passed else 'FAIL'} {op} {algo} {k} {m.N} {m.n} {c} {root_txt}")
    return 0 if all_passed else 1


def cmd_dump(args) -> int:
    for name, values in (("--op", args.op), ("--algo", args.algo), ("--k", args.k), ("-c", args.c)):
        if len(values) != 1:
            raise InvalidParams(f"dump takes exactly one {name} value, got {values}")
    op, algo, k, c = args.op[0], args.algo[0], args.k[0], args.c[0]
    m = _machine_for(args, k)
    sched = _generate(op, algo, m, k, args.root, c, args.full_node_bcast)
    for line in dump_lines(sched):
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collsim",
        description="Generate, verify, and cost-simulate collective communication "
                    "schedules for k-ported, k-lane, and full-lane algorithms.",
    )
    subs = parser.add_subparsers(dest="mode", required=True)

    run = subs.add_parser("run", help="stats and modeled time, one row per case")
    _add_common(run)
    run.set_defaults(func=cmd_run)

    verify = subs.add_parser("verify", help="semantic check per case, exit 1 on FAIL")
    _add_common(verify)
    verify.add_argument("--mutate", choices=["drop-last-event"], default=None,
                        help="test hook: damage each schedule before verifying")
    verify.set_defaults(func=cmd_verify)

    dump = subs.add_parser("dump", help="exact event listing of one schedule")
    _add_common(dump)
    dump.set_defaults(func=cmd_dump)

    sweep = subs.add_parser("sweep", help="cross-product CSV report, optional figure")
    _add_common(sweep)
    sweep.add_argument("--plot", default=None, metavar="FILE",
                       help="also render modeled time vs count to this image file")
    sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidShape, InvalidParams, ValueError) as exc:
        print(f"collsim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
