"""Induction proofs of sequence inequalities by refutation.

A problem declares sequence variables with an initial value and a shift
rule, assumptions that hold at every index, and the claim.  For a
hypothesis depth ``r`` the engine asks a solver for two kinds of
satisfiability queries:

* initial conditions: the assumptions at indices ``t..k`` together with
  the negated claim at ``k``, for ``k = t..t+r-1``;
* the induction step: assumptions shifted ``0..r`` times, the claim
  shifted ``0..r-1`` times and the negated ``r``-th shift of the claim.

Unsatisfiability of all of them proves the claim for every index ``n >= t``.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .algebra import RationalFunction
from .formula import (
    FREE_TERM,
    Formula,
    ShiftRule,
    Shifter,
    conj,
    free_term,
    map_atoms,
    atom,
    negate,
    substitute,
    variables,
)
from .preprocess import (
    Strategy,
    apply_strategy,
    encode_algebraic,
    encode_radicals_rf,
    expr_radicands,
    radicands,
    side_conditions,
)
from .smtlib import DEFAULT_SOLVERS, SolverConfig, SolverResult, Status, emit_script, run_solver
from .syntax import parse_expr, parse_relation

log = logging.getLogger(__name__)

_RESERVED = re.compile(r"^(x|s|sqrt|x_\d+|x_s\d+|y_\d+|true|false)$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class ProblemError(ValueError):
    pass


def index_term(i: int) -> str:
    """Name of the free term with 1-based position ``i`` in the unrolled sequence."""
    return f"x_{i}"


@dataclass(frozen=True)
class SequenceVarDecl:
    name: str
    init: RationalFunction
    shift_rule: ShiftRule


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    sequence_vars: tuple[SequenceVarDecl, ...]
    assumptions: Formula
    claim: Formula
    t: int = 1
    strategy: Strategy = Strategy.GUARD
    source: Mapping | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.t < 1:
            raise ProblemError("base index t must be >= 1")
        names = [v.name for v in self.sequence_vars]
        if len(set(names)) != len(names):
            raise ProblemError("sequence variable names must be unique")

    @property
    def rules(self) -> tuple[ShiftRule, ...]:
        return tuple(v.shift_rule for v in self.sequence_vars)

    @property
    def seq_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.sequence_vars)

    def with_claim(self, claim: Formula) -> "ProblemSpec":
        return replace(self, claim=claim)


@dataclass(frozen=True)
class InductionConfig:
    max_r: int = 5
    solver: SolverConfig = DEFAULT_SOLVERS["z3"]
    timeout: float = 1200.0
    on_timeout: str = "continue"
    reduce_radicals: bool = True

    def __post_init__(self):
        if self.max_r < 1:
            raise ValueError("max_r must be >= 1")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.on_timeout not in ("continue", "abort"):
            raise ValueError("on_timeout must be 'continue' or 'abort'")


# ---------------------------------------------------------------------------
# problem files


def problem_from_dict(data: Mapping, strategy: Strategy | str | None = None) -> ProblemSpec:
    """Build a problem from its JSON form; see README for the schema."""
    try:
        name = str(data["name"])
        t = int(data.get("t", 1))
        decls = data["sequence_vars"]
        claim_text = data["claim"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ProblemError(f"malformed problem: {exc}") from exc
    seq_names = []
    for d in decls:
        n = d.get("name", "")
        if not _IDENT.match(n) or _RESERVED.match(n):
            raise ProblemError(f"invalid sequence variable name {n!r}")
        seq_names.append(n)
    in_step = set(seq_names) | {FREE_TERM, free_term(1)}
    in_formula = set(seq_names) | {FREE_TERM}
    try:
        vars_ = tuple(
            SequenceVarDecl(
                d["name"],
                parse_expr(str(d["init"]), rename={FREE_TERM: index_term(1)}, allowed={index_term(1)}),
                ShiftRule(d["name"], parse_expr(str(d["shift"]), allowed=in_step)),
            )
            for d in decls
        )
        assumptions = conj(parse_relation(str(a), allowed=in_formula) for a in data.get("assumptions", []))
        claim = parse_relation(str(claim_text), allowed=in_formula)
    except KeyError as exc:
        raise ProblemError(f"sequence variable entry missing {exc}") from exc
    except ValueError as exc:
        raise ProblemError(f"{name}: {exc}") from exc
    strat = Strategy.parse(strategy or data.get("strategy", "guard"))
    return ProblemSpec(name, vars_, assumptions, claim, t, strat, source=dict(data))


def load_problem(path: str | os.PathLike, strategy: Strategy | str | None = None) -> ProblemSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"{path}: {exc}") from exc
    return problem_from_dict(data, strategy)


# ---------------------------------------------------------------------------
# formulas


def unroll_initial(p: ProblemSpec, k: int) -> dict[str, RationalFunction]:
    """Explicit values of the sequence variables at index ``k`` over ``x_1..x_{k-t+1}``."""
    if k < p.t:
        raise ValueError(f"index {k} precedes the base index {p.t}")
    values = {v.name: v.init for v in p.sequence_vars}
    for n in range(p.t, k):
        pos = n - p.t + 1
        b: dict[str, RationalFunction] = dict(values)
        b[FREE_TERM] = RationalFunction.var(index_term(pos))
        b[free_term(1)] = RationalFunction.var(index_term(pos + 1))
        values = {v.name: v.shift_rule.shift_expr.substitute(b) for v in p.sequence_vars}
    return values


def instantiate(f: Formula, p: ProblemSpec, k: int, values: Mapping[str, RationalFunction] | None = None) -> Formula:
    """``f`` evaluated at the explicit index ``k``."""
    if values is None:
        values = unroll_initial(p, k)
    extra = {v for v in variables(f) if v.startswith(FREE_TERM + "_s")}
    if extra:
        raise ProblemError(f"{sorted(extra)} would reach beyond the initial window at index {k}")
    b = dict(values)
    b[FREE_TERM] = RationalFunction.var(index_term(k - p.t + 1))
    return substitute(f, b)


def build_initial_check(p: ProblemSpec, k: int) -> Formula:
    """Assumptions at ``t..k`` and the negated claim at ``k``; UNSAT certifies ``[claim]_k``."""
    if k < p.t:
        raise ValueError(f"index {k} precedes the base index {p.t}")
    parts = [instantiate(p.assumptions, p, j) for j in range(p.t, k + 1)]
    parts.append(negate(instantiate(p.claim, p, k)))
    return conj(parts)


def refutation_parts(p: ProblemSpec, r: int) -> tuple[list[Formula], list[Formula], Formula]:
    """The assumption levels ``0..r``, claim hypotheses ``0..r-1`` and the negated goal."""
    if r < 1:
        raise ValueError("hypothesis depth r must be >= 1")
    s = Shifter(p.rules)
    assumptions = [s(p.assumptions, i) for i in range(r + 1)]
    hypotheses = [s(p.claim, i) for i in range(r)]
    goal = negate(s(p.claim, r))
    return assumptions, hypotheses, goal


def build_refutation(p: ProblemSpec, r: int) -> Formula:
    assumptions, hypotheses, goal = refutation_parts(p, r)
    return conj(*assumptions, *hypotheses, goal)


def prepare_query(f: Formula, strategy: Strategy | str, reduce_radicals: bool = True) -> Formula:
    """Radical encoding followed by denominator handling."""
    return apply_strategy(encode_algebraic(f, reduce_radicals), strategy)


def query_script(
    f: Formula,
    strategy: Strategy | str,
    reduce_radicals: bool = True,
    produce_models: bool = False,
    header: Sequence[str] = (),
) -> str:
    strategy = Strategy.parse(strategy)
    q = prepare_query(f, strategy, reduce_radicals)
    comment = [*header, f"strategy: {strategy}", f"radical reduction: {'on' if reduce_radicals else 'off'}"]
    return emit_script(q, produce_models=produce_models, comment=comment, allow_division=strategy is Strategy.GUARD)


def refutation_script(
    p: ProblemSpec,
    r: int = 1,
    strategy: Strategy | str | None = None,
    reduce_radicals: bool = True,
    produce_models: bool = False,
) -> str:
    return query_script(
        build_refutation(p, r),
        strategy or p.strategy,
        reduce_radicals,
        produce_models,
        header=[f"problem: {p.name}", f"induction step, t={p.t}, r={r}"],
    )


def initial_script(
    p: ProblemSpec,
    k: int,
    strategy: Strategy | str | None = None,
    reduce_radicals: bool = True,
    produce_models: bool = False,
) -> str:
    return query_script(
        build_initial_check(p, k),
        strategy or p.strategy,
        reduce_radicals,
        produce_models,
        header=[f"problem: {p.name}", f"initial condition, k={k}"],
    )


def encode_problem_radicals(p: ProblemSpec, reduce: bool = True) -> tuple[ProblemSpec, Formula]:
    """Problem-level radical encoding: expressions rewritten, side conditions returned separately."""
    ds = set()
    for f in (p.assumptions, p.claim):
        ds.update(radicands(f))
    for v in p.sequence_vars:
        ds |= expr_radicands(v.init) | expr_radicands(v.shift_rule.shift_expr)
    ds = sorted(ds)
    if not ds:
        return p, conj()

    def rf(e: RationalFunction) -> RationalFunction:
        return encode_radicals_rf(e, ds, reduce)

    def fm(f: Formula) -> Formula:
        return map_atoms(f, lambda a: atom(rf(a.lhs), a.op))

    vars_ = tuple(
        SequenceVarDecl(v.name, rf(v.init), ShiftRule(v.name, rf(v.shift_rule.shift_expr))) for v in p.sequence_vars
    )
    return replace(p, sequence_vars=vars_, assumptions=fm(p.assumptions), claim=fm(p.claim)), side_conditions(ds)


# ---------------------------------------------------------------------------
# the prover


@dataclass
class TraceEntry:
    kind: str  # "initial" or "step"
    index: int  # k for initial checks, r for induction steps
    result: SolverResult
    script_sha1: str = ""

    @property
    def description(self) -> str:
        return f"initial k={self.index}" if self.kind == "initial" else f"step r={self.index}"


@dataclass
class ProofOutcome:
    trace: list[TraceEntry]

    def summary(self) -> str:
        raise NotImplementedError


@dataclass
class Proved(ProofOutcome):
    t: int
    r: int

    def summary(self) -> str:
        return f"Proved at t={self.t}, r={self.r}"


@dataclass
class FailedInitial(ProofOutcome):
    k: int
    witness: dict[str, Fraction | None] | None = None

    def summary(self) -> str:
        w = f" witness {format_witness(self.witness)}" if self.witness else ""
        return f"Initial condition fails at k={self.k}{w}"


@dataclass
class Unknown(ProofOutcome):
    r_reached: int
    witness: dict[str, Fraction | None] | None = None

    def summary(self) -> str:
        w = f"; last witness {format_witness(self.witness)}" if self.witness else ""
        return f"Unknown after r={self.r_reached}{w}"


@dataclass
class SolverError(ProofOutcome):
    detail: str
    spawn_failed: bool = False

    def summary(self) -> str:
        return f"Solver error: {self.detail}"


def format_witness(w: Mapping[str, Fraction | None] | None) -> str:
    if not w:
        return "{}"
    return "{" + ", ".join(f"{k}={v if v is not None else '?'}" for k, v in sorted(w.items())) + "}"


def format_trace(outcome: ProofOutcome) -> str:
    lines = []
    for e in outcome.trace:
        lines.append(f"  {e.description:<14} {e.result.status.value:<8} {e.result.time:8.3f}s")
    return "\n".join(lines)


Runner = Callable[[str], SolverResult]


def prove(
    p: ProblemSpec,
    cfg: InductionConfig = InductionConfig(),
    strategy: Strategy | str | None = None,
    runner: Runner | None = None,
) -> ProofOutcome:
    """Search for an induction proof with hypothesis depth ``r = 1..cfg.max_r``.

    ``runner`` maps a script to a :class:`SolverResult`; by default the
    configured solver runs under ``cfg.timeout``.
    """
    strategy = Strategy.parse(strategy or p.strategy)
    if runner is None:
        solver, limit = cfg.solver, cfg.timeout
        runner = lambda script: run_solver(script, solver, limit)  # noqa: E731
    trace: list[TraceEntry] = []
    certified: set[int] = set()
    witness = None

    def ask(kind: str, index: int, f: Formula) -> SolverResult:
        hdr = [f"problem: {p.name}", f"{kind} {index}"]
        script = query_script(f, strategy, cfg.reduce_radicals, produce_models=cfg.solver.models, header=hdr)
        res = runner(script)
        trace.append(TraceEntry(kind, index, res, hashlib.sha1(script.encode()).hexdigest()))
        log.info("%s %s=%d: %s (%.3fs)", p.name, "k" if kind == "initial" else "r", index, res.status, res.time)
        return res

    def failure(res: SolverResult) -> SolverError:
        detail = (res.stderr or res.raw).strip() or "solver failed"
        return SolverError(trace, detail, res.spawn_failed)

    for r in range(1, cfg.max_r + 1):
        for k in range(p.t, p.t + r):
            if k in certified:
                continue
            res = ask("initial", k, build_initial_check(p, k))
            if res.status is Status.UNSAT:
                certified.add(k)
            elif res.status is Status.SAT:
                return FailedInitial(trace, k, res.witness)
            elif res.status is Status.ERROR:
                return failure(res)
            else:
                return Unknown(trace, r - 1, witness)
        res = ask("step", r, build_refutation(p, r))
        if res.status is Status.UNSAT:
            return Proved(trace, p.t, r)
        if res.status is Status.ERROR:
            return failure(res)
        if res.status is Status.SAT:
            witness = res.witness
        elif cfg.on_timeout == "abort":
            return Unknown(trace, r, witness)
    return Unknown(trace, cfg.max_r, witness)


def audit(outcome: ProofOutcome, t: int) -> bool:
    """Check that a Proved outcome is backed by UNSAT answers in its trace."""
    if not isinstance(outcome, Proved):
        return True
    unsat = {(e.kind, e.index) for e in outcome.trace if e.result.status is Status.UNSAT}
    needed = {("initial", k) for k in range(t, t + outcome.r)} | {("step", outcome.r)}
    return needed <= unsat
