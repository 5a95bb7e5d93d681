"""Command-line interface: ``mapvlsn <command> ...``.

Exit status is 0 on success, 1 on solver or input errors and 2 on usage
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import solvers
from .errors import MapError
from .exact import export_ilp
from .linkage import format_report, make_experiment, read_dataset
from .names import researcher_names
from .stats import BENCH_HEADER, REPORT_HEADER, pair_from_table, read_bench_table, report_row
from .tensor import InstanceSeedSpec, format_solution, generate_instance, read_instance, write_instance
from .vlsn import format_trace

VARIANTS = ("steepest", "best", "first", "random")
DISTS = ("uniform01", "uint1e6")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_gen(args) -> None:
    tensor = generate_instance(InstanceSeedSpec(args.dims, args.card, args.seed, args.dist))
    write_instance(tensor, args.out)


def cmd_solve(args) -> None:
    tensor = read_instance(args.input)
    res = solvers.run(
        tensor,
        args.algo,
        variant=args.variant,
        starts=args.starts,
        grid_cap=args.grid_cap,
        budget=args.budget,
        seed=args.seed,
        threads=args.threads,
    )
    _emit(format_solution(res.assignment, res.value), args.out)
    if args.trace:
        if not res.traces:
            raise MapError(f"algorithm {args.algo} produces no descent trace")
        _emit(format_trace(res.traces[res.best_index]), args.trace)


def cmd_link(args) -> None:
    if args.names:
        names = researcher_names(args.names, args.seed)
        sources = args.copies
    else:
        if not args.sources:
            raise MapError("give --sources files or --names N")
        sets = [read_dataset(p, s) for s, p in enumerate(args.sources)]
        names = list(sets[0].records)
        if any(len(d) != len(names) for d in sets):
            raise MapError("source files must be line-aligned (line i of every file is one entity)")
        sources = len(sets) if len(sets) > 1 else args.copies
    exp = make_experiment(names, args.error, args.seed, sources=sources)
    result = exp.run(args.algo, seed=args.seed)
    _emit(format_report(result), args.report)


def _bench_rows(args):
    def one(job):
        i, algo = job
        tensor = generate_instance(InstanceSeedSpec(args.dims, args.card, args.seed + i, args.dist))
        t0 = time.perf_counter()
        res = solvers.run(tensor, algo, starts=args.starts, grid_cap=args.grid_cap, budget=args.budget, seed=args.seed + i)
        return [i + 1, algo, repr(res.value), res.nodes, f"{time.perf_counter() - t0:.4f}"]

    jobs = [(i, algo) for i in range(args.instances) for algo in args.algos]
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            return list(pool.map(one, jobs))
    return [one(j) for j in jobs]


def cmd_bench(args) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    writer.writerows(_bench_rows(args))
    _emit(buf.getvalue(), args.out)


def cmd_stats(args) -> None:
    with open(args.bench_table, encoding="utf-8") as fh:
        table = read_bench_table(fh.read())
    sample = pair_from_table(table, args.a1, args.a2)
    kwargs = {"t_value": args.t_value}
    if args.method == "cox":
        kwargs["policy"] = args.zero_policy
    row = report_row(sample, args.dims if args.dims else "-", args.card if args.card else "-", args.method, **kwargs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    writer.writerow(row)
    _emit(buf.getvalue(), args.out)


def cmd_ilp_export(args) -> None:
    export_ilp(read_instance(args.input), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mapvlsn", description="Multidimensional assignment solvers and experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    threads_default = os.cpu_count() or 1

    p = sub.add_parser("gen", help="generate a random instance file")
    p.add_argument("--dims", type=int, required=True)
    p.add_argument("--card", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", choices=DISTS, default="uniform01")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--algo", choices=solvers.ALGORITHMS, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="steepest")
    p.add_argument("--starts", type=_positive, default=8, help="random starts for vlsnms")
    p.add_argument("--grid-cap", type=_positive, default=None)
    p.add_argument("--budget", type=_positive, default=None, help="LAP solves per descent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", default=None, help="write the best descent's trace here")
    p.add_argument("--out", default=None, help="solution file (default: stdout)")
    p.add_argument("--threads", type=_positive, default=threads_default)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("link", help="run a record-linkage experiment")
    p.add_argument("--sources", nargs="+", default=None, help="line-aligned source files")
    p.add_argument("--names", type=_positive, default=None, help="use N generated names instead of files")
    p.add_argument("--copies", type=int, default=3, help="sources to make from a single list")
    p.add_argument("--error", type=float, default=0.0, help="per-character distortion percent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", choices=solvers.ALGORITHMS, default="greedy-vlsn")
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("bench", help="solve seeded instances with several algorithms")
    p.add_argument("--dims", type=int, required=True)
    p.add_argument("--card", type=int, required=True)
    p.add_argument("--instances", type=_positive, required=True)
    p.add_argument("--algos", nargs="+", choices=solvers.ALGORITHMS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", choices=DISTS, default="uniform01")
    p.add_argument("--starts", type=_positive, default=8)
    p.add_argument("--grid-cap", type=_positive, default=None)
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--threads", type=_positive, default=threads_default)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="compare two algorithms from a bench table")
    p.add_argument("--bench-table", required=True)
    p.add_argument("--a1", required=True, help="VLSN-family algorithm")
    p.add_argument("--a2", required=True, help="alternative algorithm")
    p.add_argument("--method", choices=("paired", "cox"), default="paired")
    p.add_argument("--zero-policy", choices=("strict", "epsilon"), default="strict")
    p.add_argument("--t-value", type=float, default=None, help="fixed t quantile instead of the computed one")
    p.add_argument("--dims", type=int, default=None)
    p.add_argument("--card", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("ilp-export", help="write the instance as an LP-format 0-1 program")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ilp_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (MapError, OSError, ValueError) as exc:
        print(f"mapvlsn: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
