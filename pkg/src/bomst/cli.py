"""Command-line interface.

Subcommands: ``gen`` (instance generation), ``solve`` (two-phase run with one
strategy), ``optimal`` (optimal grouping), ``oracle`` (exhaustive ground
truth), and ``bench`` (strategy x instance grid to CSV).

Exit codes: 0 success, 1 usage error, 2 input error, 3 enumeration budget
exceeded (solve only).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as bench_mod
from .instances import GenParams, Instance, InstanceFormatError, generate, read_instance, write_instance
from .optimal import DEFAULT_TAU, ExplorationCosts, exhaustive_optimal, optimal_grouping
from .oracle import OracleSizeError, frontier_of, tree_point_arrays
from .phase1 import dichotomic_search
from .ranking import SpanningTreeProblem
from .strategies import STRATEGY_LABELS, parse_strategy, solve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bomst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a complete bi-objective instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--range", type=int, required=True, dest="range_", metavar="RANGE")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("solve", help="run the two-phase method with one strategy")
    p.add_argument("--instance", required=True)
    p.add_argument("--strategy", required=True, help=f"one of {', '.join(STRATEGY_LABELS)}")
    p.add_argument("--points-out", default=None)
    p.add_argument("--max-enumerations", type=int, default=None)

    p = sub.add_parser("optimal", help="compute the optimal grouping")
    p.add_argument("--instance", required=True)
    p.add_argument("--tau", type=int, default=DEFAULT_TAU)
    p.add_argument("--exhaustive-check", action="store_true")

    p = sub.add_parser("oracle", help="exhaustive enumeration for small instances")
    p.add_argument("--instance", required=True)
    p.add_argument("--classify", action="store_true")

    p = sub.add_parser("bench", help="run a strategy grid and emit CSV")
    p.add_argument("--instances", required=True, help="directory of instance files")
    p.add_argument("--strategies", required=True, help="comma-separated strategy labels")
    p.add_argument("--optimal", action="store_true")
    p.add_argument("--tau", type=int, default=DEFAULT_TAU)
    p.add_argument("--csv", required=True)
    p.add_argument("--max-enumerations", type=int, default=None)
    return parser


def _load_instance(path: str) -> Instance:
    try:
        return read_instance(path)
    except FileNotFoundError:
        print(f"error: no such instance file: {path}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT) from None
    except InstanceFormatError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT) from None


def _cmd_gen(args) -> int:
    try:
        params = GenParams(args.n, args.range_, args.rho, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    instance = generate(params)
    comment = f"generated: n={params.n} range={params.r} rho={params.rho} seed={params.seed}"
    write_instance(instance, args.out, comment=comment)
    print(f"wrote {args.out}: n={instance.n}, m={instance.num_edges}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    instance = _load_instance(args.instance)
    try:
        spec = parse_strategy(args.strategy)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = solve(SpanningTreeProblem(instance), spec, max_enumerations=args.max_enumerations)
    print(f"strategy       {spec.label}")
    print(f"extreme points {len(result.extreme_set.points)}")
    print(f"scalar solves  {result.extreme_set.scalarized_solve_count}")
    print(f"nondominated   {len(result.y_n)}")
    print(f"enumerated     {result.enumerated}")
    print(f"solved         {'yes' if result.solved else 'no (budget exceeded)'}")
    if args.points_out:
        with open(args.points_out, "w", encoding="utf-8") as fh:
            for p in result.y_n:
                fh.write(f"{p.z1} {p.z2}\n")
    return EXIT_OK if result.solved else EXIT_BUDGET


def _cmd_optimal(args) -> int:
    instance = _load_instance(args.instance)
    problem = SpanningTreeProblem(instance)
    extreme_set = dichotomic_search(problem)
    costs = ExplorationCosts(problem, extreme_set.points)
    result = optimal_grouping(costs, args.tau)
    print(f"extreme points   {len(extreme_set.points)}")
    print(f"active triangles {costs.num_active}")
    print(f"optimal cost     {result.total_cost}")
    print(f"grouping         {result.grouping}")
    print(f"arcs evaluated   {result.arcs_evaluated} ({result.arcs_rejected} rejected)")
    if args.exhaustive_check:
        reference = exhaustive_optimal(costs, args.tau)
        ok = reference.total_cost == result.total_cost
        print(f"exhaustive check {'ok' if ok else 'MISMATCH'} (reference cost {reference.total_cost})")
        if not ok:
            return EXIT_INPUT
    return EXIT_OK


def _cmd_oracle(args) -> int:
    instance = _load_instance(args.instance)
    try:
        z1, _ = tree_point_arrays(instance)
        frontier = frontier_of(instance)
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"spanning trees {len(z1)}")
    print(f"nondominated   {len(frontier.y_n)}")
    if args.classify:
        print(f"extreme supported    {len(frontier.y_nse)}: {frontier.y_nse}")
        print(f"nonextreme supported {len(frontier.y_nsn)}: {frontier.y_nsn}")
        print(f"unsupported          {len(frontier.y_nu)}: {frontier.y_nu}")
    else:
        print(f"points         {frontier.y_n}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    directory = Path(args.instances)
    if not directory.is_dir():
        print(f"error: not a directory: {directory}", file=sys.stderr)
        return EXIT_INPUT
    paths = sorted(p for p in directory.iterdir() if p.is_file() and not p.name.startswith("."))
    if not paths:
        print(f"error: no instance files in {directory}", file=sys.stderr)
        return EXIT_INPUT
    instances = [(p.name, _load_instance(str(p))) for p in paths]
    labels = [s.strip() for s in args.strategies.split(",") if s.strip()]
    try:
        for label in labels:
            parse_strategy(label)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    records, optima = bench_mod.run_grid(
        instances, labels,
        with_optimal=args.optimal, tau=args.tau, max_enumerations=args.max_enumerations,
    )
    bench_mod.write_csv(records, args.csv)
    print(f"wrote {args.csv}: {len(records)} records")
    if args.optimal:
        sizes_path = str(Path(args.csv).with_suffix(".sizes.csv"))
        bench_mod.write_group_size_csv(optima, sizes_path, args.tau)
        print(f"wrote {sizes_path}: group size histograms")
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "optimal": _cmd_optimal,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # input errors raised from shared helpers
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
