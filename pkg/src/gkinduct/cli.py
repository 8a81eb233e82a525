"""Command-line front end: prove, translate, bench, plot, examples."""

from __future__ import annotations

import argparse
import logging
import os
import shutil
import sys
from pathlib import Path

from . import bench, examples
from .induction import (
    InductionConfig,
    ProblemError,
    SolverError,
    format_trace,
    initial_script,
    load_problem,
    prove,
    refutation_script,
)
from .preprocess import Strategy
from .smtlib import SOLVERS_ENV, DEFAULT_SOLVERS, SolverConfigError, load_solver_configs, resolve_solver

EXIT_USAGE = 1
EXIT_DISAGREEMENT = 2
EXIT_SPAWN = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _strategy(text: str) -> Strategy:
    try:
        return Strategy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gkinduct", description="Induction proofs of sequence inequalities via SMT solvers.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log every solver query")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prove", help="search for an induction proof")
    p.add_argument("problem", help="problem file (JSON)")
    p.add_argument("--solver", default="z3", help="solver name (default: z3)")
    p.add_argument("--solvers", help=f"solver config file (default: ${SOLVERS_ENV} or built-ins)")
    p.add_argument("--max-r", type=_positive_int, default=5, help="largest hypothesis depth (default: 5)")
    p.add_argument("--timeout", type=_positive_float, default=1200.0, help="seconds per query (default: 1200)")
    p.add_argument("--strategy", type=_strategy, help="guard, bdc or ddc (default: from the problem file)")
    p.add_argument("--reduce-radicals", type=_on_off, default=True, metavar="on|off")
    p.add_argument("--on-timeout", choices=["continue", "abort"], default="continue")

    t = sub.add_parser("translate", help="write the SMT-LIB query for the induction step")
    t.add_argument("problem", help="problem file (JSON)")
    t.add_argument("-o", "--output", help="output .smt2 file (default: stdout)")
    t.add_argument("--strategy", type=_strategy, help="guard, bdc or ddc (default: from the problem file)")
    t.add_argument("--r", type=_positive_int, default=1, help="hypothesis depth (default: 1)")
    t.add_argument("--initial", type=_positive_int, metavar="K", help="emit the initial check at index K instead")
    t.add_argument("--reduce-radicals", type=_on_off, default=True, metavar="on|off")
    t.add_argument("--models", action="store_true", help="request a model on sat")

    b = sub.add_parser("bench", help="run every problem under every strategy and solver")
    b.add_argument("--problems", required=True, help="directory of problem files")
    b.add_argument("--solvers", help=f"solver config file (default: ${SOLVERS_ENV} or z3)")
    b.add_argument("--strategies", default="guard,bdc,ddc", help="comma-separated (default: guard,bdc,ddc)")
    b.add_argument("--timeout", type=_positive_float, default=1200.0, help="seconds per query (default: 1200)")
    b.add_argument("--jobs", type=_positive_int, default=1, help="concurrent solvers; >1 distorts times")
    b.add_argument("--r", type=_positive_int, default=1, help="hypothesis depth (default: 1)")
    b.add_argument("--reduce-radicals", type=_on_off, default=True, metavar="on|off")
    b.add_argument("-o", "--output", required=True, help="output directory")

    pl = sub.add_parser("plot", help="survival or scatter plot from results.csv")
    pl.add_argument("results", help="results.csv written by bench")
    pl.add_argument("--kind", choices=["survival", "scatter"], default="survival")
    pl.add_argument("--a", help="first solver (scatter x-axis)")
    pl.add_argument("--b", help="second solver (scatter y-axis)")
    pl.add_argument("--timeout", type=_positive_float, help="clamp timeouts to this value in scatter plots")
    pl.add_argument("-o", "--output", help="output file (default: <kind>.svg next to the CSV)")

    e = sub.add_parser("examples", help="write the bundled example problems")
    e.add_argument("-o", "--output", required=True, help="output directory")
    e.add_argument("--smt", action="store_true", help="also write induction-step scripts in all three strategies")
    e.add_argument("--reduce-radicals", type=_on_off, default=True, metavar="on|off")
    return parser


def _solver_configs(path: str | None):
    path = path or os.environ.get(SOLVERS_ENV)
    if path:
        return load_solver_configs(path)
    return [DEFAULT_SOLVERS["z3"]]


def _check_spawnable(cfgs) -> str | None:
    for cfg in cfgs:
        if shutil.which(cfg.cmd[0]) is None:
            return f"solver {cfg.name!r}: executable {cfg.cmd[0]!r} not found"
    return None


def cmd_prove(args) -> int:
    p = load_problem(args.problem)
    solver = resolve_solver(args.solver, args.solvers)
    missing = _check_spawnable([solver])
    if missing:
        print(missing, file=sys.stderr)
        return EXIT_SPAWN
    cfg = InductionConfig(
        max_r=args.max_r,
        solver=solver,
        timeout=args.timeout,
        on_timeout=args.on_timeout,
        reduce_radicals=args.reduce_radicals,
    )
    outcome = prove(p, cfg, strategy=args.strategy)
    print(outcome.summary())
    print(format_trace(outcome))
    if isinstance(outcome, SolverError):
        return EXIT_SPAWN if outcome.spawn_failed else EXIT_USAGE
    return 0


def cmd_translate(args) -> int:
    p = load_problem(args.problem)
    if args.initial is not None:
        script = initial_script(p, args.initial, args.strategy, args.reduce_radicals, args.models)
    else:
        script = refutation_script(p, args.r, args.strategy, args.reduce_radicals, args.models)
    if args.output:
        Path(args.output).write_text(script, encoding="utf-8")
    else:
        sys.stdout.write(script)
    return 0


def cmd_bench(args) -> int:
    src = Path(args.problems)
    if not src.is_dir():
        raise UsageError(f"{src} is not a directory")
    problems = [load_problem(f) for f in sorted(src.glob("*.json"))]
    if not problems:
        raise UsageError(f"no problem files in {src}")
    cfgs = _solver_configs(args.solvers)
    missing = _check_spawnable(cfgs)
    if missing:
        print(missing, file=sys.stderr)
        return EXIT_SPAWN
    strategies = [Strategy.parse(s.strip()) for s in args.strategies.split(",") if s.strip()]
    records = bench.run_benchmark(
        problems, cfgs, strategies, args.timeout, args.jobs, r=args.r, reduce_radicals=args.reduce_radicals
    )
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    bench.write_csv(records, out / "results.csv")
    bench.write_matrix(records, out / "matrix.csv")
    for rec in records:
        print(f"{rec.problem:<20} {rec.strategy:<6} {rec.solver:<8} {rec.status.value:<8} {rec.time_s:8.3f}s")
    bad = bench.disagreements(records)
    if bad:
        print("soundness disagreement on: " + ", ".join(bad), file=sys.stderr)
        return EXIT_DISAGREEMENT
    return 0


def cmd_plot(args) -> int:
    records = bench.read_csv(args.results)
    out = Path(args.output) if args.output else Path(args.results).with_name(f"{args.kind}.svg")
    if args.kind == "survival":
        solvers = sorted({r.solver for r in records})
        if args.a or args.b:
            solvers = [s for s in (args.a, args.b) if s]
        series = [bench.survival_series(records, s) for s in solvers]
        path = bench.write_plot(bench.survival_figure(series), out)
    else:
        if not (args.a and args.b):
            raise UsageError("scatter plots need --a and --b")
        try:
            points = bench.scatter_series(records, args.a, args.b, args.timeout)
        except bench.MissingSolver as exc:
            raise UsageError(str(exc)) from None
        path = bench.write_plot(bench.scatter_figure(points, args.a, args.b), out)
        if any(p.disagreement for p in points):
            print(f"wrote {path}")
            print("soundness disagreement in scatter data", file=sys.stderr)
            return EXIT_DISAGREEMENT
    print(f"wrote {path}")
    return 0


def cmd_examples(args) -> int:
    out = Path(args.output)
    paths = examples.write_catalog(out)
    for path in paths:
        print(path)
        if args.smt:
            p = load_problem(path)
            for s in Strategy:
                target = out / f"{p.name}.{s.value}.smt2"
                target.write_text(refutation_script(p, 1, s, args.reduce_radicals), encoding="utf-8")
                print(target)
    return 0


COMMANDS = {
    "prove": cmd_prove,
    "translate": cmd_translate,
    "bench": cmd_bench,
    "plot": cmd_plot,
    "examples": cmd_examples,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ProblemError, SolverConfigError, ValueError, OSError) as exc:
        print(f"gkinduct {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
