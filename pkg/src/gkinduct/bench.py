"""Benchmark runs over problems x strategies x solvers, plus survival and scatter data."""

from __future__ import annotations

import csv
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .induction import ProblemSpec, refutation_script
from .preprocess import Strategy
from .smtlib import SolverConfig, SolverResult, Status, run_solver

CSV_HEADER = ["problem", "strategy", "solver", "status", "time_s"]


class MissingSolver(KeyError):
    def __str__(self) -> str:
        return f"no records for solver {self.args[0]!r}"


@dataclass(frozen=True)
class BenchRecord:
    problem: str
    strategy: str
    solver: str
    status: Status
    time_s: float

    @property
    def solved(self) -> bool:
        return self.status not in (Status.TIMEOUT, Status.ERROR)


@dataclass(frozen=True)
class SurvivalSeries:
    solver: str
    points: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class ScatterPoint:
    problem: str
    strategy: str
    time_a: float
    time_b: float
    label: str  # "SAT", "UNSAT", "UNKNOWN" or "DISAGREE"
    clamped: bool = False

    @property
    def disagreement(self) -> bool:
        return self.label == "DISAGREE"


Runner = Callable[[str, SolverConfig, float], SolverResult]


def run_benchmark(
    problems: Sequence[ProblemSpec],
    solvers: Sequence[SolverConfig],
    strategies: Sequence[Strategy | str],
    timeout: float,
    jobs: int = 1,
    r: int = 1,
    reduce_radicals: bool = True,
    runner: Runner = run_solver,
) -> list[BenchRecord]:
    """One record per (problem, strategy, solver), at most ``jobs`` solvers at once.

    Each task runs the depth-``r`` induction-step query.  Times are only
    faithful with ``jobs=1``.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    strategies = [Strategy.parse(s) for s in strategies]
    tasks = []
    for p, s in itertools.product(problems, strategies):
        script = refutation_script(p, r, s, reduce_radicals)
        for cfg in solvers:
            tasks.append((p.name, s, cfg, script))

    def work(task) -> BenchRecord:
        name, s, cfg, script = task
        try:
            res = runner(script, cfg, timeout)
            status, elapsed = res.status, res.time
        except Exception:  # a broken task never aborts the run
            status, elapsed = Status.ERROR, 0.0
        return BenchRecord(name, s.value, cfg.name, status, elapsed)

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        records = list(pool.map(work, tasks))
    return sorted(records, key=lambda rec: (rec.problem, rec.strategy, rec.solver))


def survival_series(records: Iterable[BenchRecord], solver: str) -> SurvivalSeries:
    """Sorted solve times with timeouts and errors dropped, as ``(k, cumulative)`` points."""
    times = sorted(r.time_s for r in records if r.solver == solver and r.solved)
    points = []
    total = 0.0
    for k, t in enumerate(times, start=1):
        total += t
        points.append((k, total))
    return SurvivalSeries(solver, tuple(points))


_DEFINITE = (Status.SAT, Status.UNSAT)


def consensus(statuses: Iterable[Status]) -> str:
    found = {s for s in statuses if s in _DEFINITE}
    if len(found) > 1:
        return "DISAGREE"
    if found:
        return found.pop().value.upper()
    return "UNKNOWN"


def scatter_series(
    records: Iterable[BenchRecord], solver_a: str, solver_b: str, timeout: float | None = None
) -> list[ScatterPoint]:
    """Paired times per (problem, strategy); timeouts are clamped to ``timeout``."""
    records = list(records)
    by_key: dict[tuple[str, str, str], BenchRecord] = {(r.problem, r.strategy, r.solver): r for r in records}
    names = {r.solver for r in records}
    for s in (solver_a, solver_b):
        if s not in names:
            raise MissingSolver(s)
    pairs = sorted({(r.problem, r.strategy) for r in records})
    out = []
    for problem, strategy in pairs:
        a = by_key.get((problem, strategy, solver_a))
        b = by_key.get((problem, strategy, solver_b))
        if a is None or b is None:
            continue
        clamped = False

        def t(rec: BenchRecord) -> float:
            nonlocal clamped
            if rec.status is Status.TIMEOUT and timeout is not None:
                clamped = True
                return float(timeout)
            return rec.time_s

        ta, tb = t(a), t(b)
        out.append(ScatterPoint(problem, strategy, ta, tb, consensus([a.status, b.status]), clamped))
    return out


def disagreements(records: Iterable[BenchRecord]) -> list[str]:
    """Problems that got both SAT and UNSAT (across solvers and equivalent strategies)."""
    seen: dict[str, set[Status]] = {}
    for r in records:
        seen.setdefault(r.problem, set()).add(r.status)
    return sorted(p for p, s in seen.items() if {Status.SAT, Status.UNSAT} <= s)


# ---------------------------------------------------------------------------
# output


def write_csv(records: Iterable[BenchRecord], path: str | os.PathLike) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_HEADER)
            for r in records:
                w.writerow([r.problem, r.strategy, r.solver, r.status.value, repr(float(r.time_s))])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def read_csv(path: str | os.PathLike) -> list[BenchRecord]:
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    try:
        return [
            BenchRecord(row["problem"], row["strategy"], row["solver"], Status(row["status"]), float(row["time_s"]))
            for row in rows
        ]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"{path}: malformed results row: {exc}") from exc


def write_matrix(records: Iterable[BenchRecord], path: str | os.PathLike) -> Path:
    """Status grid with one row per (problem, strategy) and one column per solver."""
    records = list(records)
    solvers = sorted({r.solver for r in records})
    rows: dict[tuple[str, str], dict[str, str]] = {}
    for r in records:
        rows.setdefault((r.problem, r.strategy), {})[r.solver] = r.status.value
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["problem", "strategy", *solvers])
        for (problem, strategy), cells in sorted(rows.items()):
            w.writerow([problem, strategy, *(cells.get(s, "") for s in solvers)])
    return path


_COLORS = {"SAT": "tab:blue", "UNSAT": "tab:red", "UNKNOWN": "tab:gray", "DISAGREE": "black"}


def survival_figure(series: Sequence[SurvivalSeries]):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for s in series:
        xs = [k for k, _ in s.points]
        ys = [c for _, c in s.points]
        ax.plot(xs, ys, marker="o", markersize=3, label=s.solver)
    ax.set_xlabel("problems solved")
    ax.set_ylabel("cumulative time (s)")
    if series:
        ax.legend()
    fig.tight_layout()
    return fig


def scatter_figure(points: Sequence[ScatterPoint], solver_a: str, solver_b: str):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 5))
    for label, color in _COLORS.items():
        sel = [p for p in points if p.label == label]
        if sel:
            ax.scatter([p.time_a for p in sel], [p.time_b for p in sel], c=color, s=12, label=label)
    hi = max([1.0] + [max(p.time_a, p.time_b) for p in points])
    ax.plot([0, hi], [0, hi], color="lightgray", linewidth=0.8)
    ax.set_xlabel(f"{solver_a} time (s)")
    ax.set_ylabel(f"{solver_b} time (s)")
    if any(p.clamped for p in points):
        ax.set_title("timeouts drawn at the limit", fontsize=9)
    if points:
        ax.legend()
    fig.tight_layout()
    return fig


def write_plot(fig, path: str | os.PathLike) -> Path:
    import matplotlib.pyplot as plt

    path = Path(path)
    if path.suffix.lower() not in (".svg", ".pdf", ".eps"):
        path = path.with_suffix(".svg")
    try:
        fig.savefig(path)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    finally:
        plt.close(fig)
    return path


def write_outputs(data, path: str | os.PathLike, kind: str = "csv", **plot_args) -> Path:
    """Write records as CSV, or survival series / scatter points as a vector plot."""
    if kind == "csv":
        return write_csv(data, path)
    if kind != "plot":
        raise ValueError(f"unknown output kind {kind!r}")
    data = list(data)
    if data and isinstance(data[0], ScatterPoint):
        fig = scatter_figure(data, plot_args.get("solver_a", "A"), plot_args.get("solver_b", "B"))
    else:
        fig = survival_figure(data)
    return write_plot(fig, path)
