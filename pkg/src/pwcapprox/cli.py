"""Command line front end.

    pwcapprox approx  --source chirp --n 10 --method db
    pwcapprox sweep   --source chirp --n-list 5,10,20 --runs 50 --seed 1
    pwcapprox balance --source csv:two_step.csv --n 2 --method dp

Exit codes: 0 success, 1 I/O or numeric failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from io import StringIO
from pathlib import Path

from .approximation import build_approximation, segment_error_report
from .experiments import (
    METHODS,
    SourceError,
    parse_n_list,
    parse_source,
    solve,
    sweep,
    write_log_tables,
    write_step_table,
    write_sweep_table,
    write_table,
)
from .pso import SwarmConfig


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--source", required=True,
                   help="chirp | csv:<path> | pgm:<path>:<row> | steps:<count>:<seed>")
    p.add_argument("--cells", type=int, default=100_000, help="chirp discretisation M")
    p.add_argument("--domain", type=float, nargs=2, metavar=("A", "B"),
                   help="domain for csv input (default [0, count])")
    p.add_argument("--sigma", type=float, default=0.0, help="additive Gaussian noise std")
    p.add_argument("--noise-seed", type=int, default=0)
    p.add_argument("--seed", type=int, default=0, help="PSO base seed")
    p.add_argument("--runs", type=int, default=50, help="PSO runs")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for PSO runs")
    p.add_argument("--refine", type=int, default=1, help="DP grid refinement r")
    p.add_argument("--out-prefix", help="also write data files with this prefix")
    swarm = p.add_argument_group("swarm")
    swarm.add_argument("--particles", type=int, default=1000)
    swarm.add_argument("--neighbours", type=int, default=20)
    swarm.add_argument("--c1", type=float, default=0.5 + math.log(2))
    swarm.add_argument("--c2", type=float, default=0.5 + math.log(2))
    swarm.add_argument("--omega", type=float, default=1 / (2 * math.log(2)))
    swarm.add_argument("--max-iter", type=int, default=10_000)
    swarm.add_argument("--stagnation-reset", type=int, default=15)
    swarm.add_argument("--tolerance", type=float, default=0.0,
                       help="stop a run once its best energy is <= this value")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwcapprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="approximate one signal with N segments")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="pso")

    p = sub.add_parser("sweep", help="DB vs PSO statistics over a list of N")
    _add_common(p)
    p.add_argument("--n-list", required=True, help="e.g. 5,10,20 or 10:100:10")
    p.add_argument("--oracle", action="store_true", help="add a DP-MSE column (grid --refine)")

    p = sub.add_parser("balance", help="per-segment errors and their max/min ratio")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="pso")
    return parser


def _config(args) -> SwarmConfig:
    return SwarmConfig(
        n=args.particles, K=args.neighbours, c1=args.c1, c2=args.c2, omega=args.omega,
        max_iter=args.max_iter, stagnation_reset=args.stagnation_reset,
        energy_tolerance=args.tolerance, seed=args.seed,
    )


def _solve(args, signal):
    return solve(signal, args.n, args.method, _config(args), args.runs, args.refine, args.jobs)


def cmd_approx(args, signal, out) -> None:
    x, stats = _solve(args, signal)
    approx = build_approximation(signal, x)
    out.write(f"mse {approx.mse!r}\n")
    out.write("boundaries" + "".join(f" {v!r}" for v in x.boundaries.tolist()) + "\n\n")
    write_step_table(out, signal, x)
    if args.out_prefix:
        stem = f"{args.out_prefix}_approx_{args.n}_{args.method}"
        with open(f"{stem}.dat", "w") as fh:
            write_step_table(fh, signal, x)
        with open(f"{stem}_boundaries.dat", "w") as fh:
            write_table(fh, ["i", "x"], enumerate(x.boundaries.tolist(), start=1))
        if stats is not None:
            with open(f"{stem}_trace.dat", "w") as fh:
                write_table(fh, ["iter", "energy"], enumerate(stats.traces[stats.best]))


def cmd_sweep(args, signal, out) -> None:
    n_list = parse_n_list(args.n_list)
    rows = sweep(signal, n_list, _config(args), args.runs, args.jobs,
                 args.refine if args.oracle else None)
    write_sweep_table(out, rows)
    out.write("\n")
    db, pso = StringIO(), StringIO()
    write_log_tables(db, pso, rows)
    out.write(db.getvalue() + "\n" + pso.getvalue())
    if args.out_prefix:
        Path(f"{args.out_prefix}_table.dat").write_text(_capture(write_sweep_table, rows))
        Path(f"{args.out_prefix}_mse_dar.dat").write_text(db.getvalue())
        Path(f"{args.out_prefix}_mse_pso.dat").write_text(pso.getvalue())


def _capture(writer, *a) -> str:
    buf = StringIO()
    writer(buf, *a)
    return buf.getvalue()


def cmd_balance(args, signal, out) -> None:
    x, _ = _solve(args, signal)
    approx = build_approximation(signal, x)
    widths = x.widths()
    write_table(out, ["segment", "start", "width", "error"],
                [(i, float(s), float(w), float(e)) for i, (s, w, e)
                 in enumerate(zip(x.edges()[:-1], widths, approx.segment_errors))])
    lo, hi, ratio = segment_error_report(approx)
    out.write(f"\nmin {lo!r}\nmax {hi!r}\nratio {ratio!r}\n")


COMMANDS = {"approx": cmd_approx, "sweep": cmd_sweep, "balance": cmd_balance}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    n = getattr(args, "n", None)
    if n is not None and n < 1:
        parser.error("--n must be >= 1")
    if args.runs < 1 or args.jobs < 1 or args.refine < 1:
        parser.error("--runs, --jobs and --refine must be >= 1")
    try:
        _config(args)
        if args.command == "sweep":
            parse_n_list(args.n_list)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        signal = parse_source(args.source, args.cells, args.sigma, args.noise_seed,
                              tuple(args.domain) if args.domain else None)
    except SourceError as exc:
        parser.error(str(exc))
    except (OSError, ValueError) as exc:
        print(f"pwcapprox: error: {exc}", file=sys.stderr)
        return 1
    try:
        COMMANDS[args.command](args, signal, out)
    except (OSError, ValueError) as exc:
        print(f"pwcapprox: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
