"""SMT-LIB 2 (QF_NRA) serialization and external solver processes."""

from __future__ import annotations

import enum
import json
import os
import re
import signal
import subprocess
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .algebra import ONE, Polynomial, RationalFunction
from .formula import And, Atom, Const, Formula, Not, Or, RelOp, conjuncts, variables

SOLVERS_ENV = "GKINDUCT_SOLVERS"


class UnsupportedConstruct(ValueError):
    pass


# ---------------------------------------------------------------------------
# emission

_SIMPLE_SYMBOL = re.compile(r"^[A-Za-z~!@$%^&*_+=<>.?/-][A-Za-z0-9~!@$%^&*_+=<>.?/-]*$")


def symbol(name: str) -> str:
    if _SIMPLE_SYMBOL.match(name):
        return name
    return "|" + name.replace("|", "") + "|"


def number(c: Fraction) -> str:
    c = Fraction(c)
    neg = c < 0
    a = -c if neg else c
    body = str(a.numerator) if a.denominator == 1 else f"(/ {a.numerator} {a.denominator})"
    return f"(- {body})" if neg else body


def _term(mono, coeff: Fraction) -> str:
    """Render ``coeff * mono`` for ``coeff > 0`` with powers expanded."""
    factors = [symbol(v) for v, e in mono for _ in range(e)]
    if not factors:
        return number(coeff)
    if coeff != 1:
        factors.insert(0, number(coeff))
    return factors[0] if len(factors) == 1 else "(* " + " ".join(factors) + ")"


def poly_sexpr(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    pos, neg = [], []
    for m, c in p.sorted_terms():
        (pos if c > 0 else neg).append(_term(m, abs(c)))
    if not neg:
        return pos[0] if len(pos) == 1 else "(+ " + " ".join(pos) + ")"
    if not pos:
        inner = neg[0] if len(neg) == 1 else "(+ " + " ".join(neg) + ")"
        return f"(- {inner})"
    head = pos[0] if len(pos) == 1 else "(+ " + " ".join(pos) + ")"
    return "(- " + head + " " + " ".join(neg) + ")"


def rf_sexpr(rf: RationalFunction, allow_division: bool) -> str:
    if rf.den == ONE:
        return poly_sexpr(rf.num)
    if not allow_division:
        raise UnsupportedConstruct(f"division in {rf} requires the guard strategy")
    return f"(/ {poly_sexpr(rf.num)} {poly_sexpr(rf.den)})"


def formula_sexpr(f: Formula, allow_division: bool = False) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        lhs = rf_sexpr(f.lhs, allow_division)
        if f.op is RelOp.NE:
            return f"(not (= {lhs} 0))"
        return f"({f.op.value} {lhs} 0)"
    if isinstance(f, Not):
        return f"(not {formula_sexpr(f.arg, allow_division)})"
    head = "and" if isinstance(f, And) else "or"
    assert isinstance(f, (And, Or))
    return f"({head} " + " ".join(formula_sexpr(a, allow_division) for a in f.args) + ")"


def emit_script(
    f: Formula,
    logic: str = "QF_NRA",
    produce_models: bool = False,
    comment: str | Sequence[str] | None = None,
    allow_division: bool = False,
) -> str:
    """Serialize ``f`` as a satisfiability query, one assert per top-level conjunct."""
    lines = []
    if comment:
        for c in [comment] if isinstance(comment, str) else comment:
            lines.extend("; " + s for s in c.splitlines())
    if produce_models:
        lines.append("(set-option :produce-models true)")
    lines.append(f"(set-logic {logic})")
    for v in sorted(variables(f)):
        lines.append(f"(declare-const {symbol(v)} Real)")
    parts = conjuncts(f)
    for c in parts:
        lines.append(f"(assert {formula_sexpr(c, allow_division)})")
    lines.append("(check-sat)")
    if produce_models:
        lines.append("(get-model)")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# s-expressions (model parsing, script checks)


def read_sexprs(text: str) -> list:
    """Parse every s-expression in ``text`` into nested lists of atoms."""
    tokens = re.findall(r'\(|\)|\|[^|]*\||"(?:[^"]|"")*"|[^\s()]+', re.sub(r";[^\n]*", "", text))
    stack: list[list] = [[]]
    for t in tokens:
        if t == "(":
            stack.append([])
        elif t == ")":
            if len(stack) == 1:
                raise ValueError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(t)
    if len(stack) != 1:
        raise ValueError("unbalanced '('")
    return stack[0]


def sexpr_text(e) -> str:
    if isinstance(e, list):
        return "(" + " ".join(sexpr_text(x) for x in e) + ")"
    return e


def value_to_fraction(e) -> Fraction | None:
    """Interpret a model value such as ``1.0``, ``(- 2)`` or ``(/ 1.0 3.0)``."""
    if isinstance(e, str):
        try:
            return Fraction(e)
        except ValueError:
            return None
    if len(e) == 2 and e[0] == "-":
        v = value_to_fraction(e[1])
        return None if v is None else -v
    if len(e) == 3 and e[0] == "/":
        a, b = value_to_fraction(e[1]), value_to_fraction(e[2])
        if a is None or not b:
            return None
        return a / b
    return None


def parse_model(text: str) -> dict[str, str]:
    """Bindings of nullary symbols, value kept as text.

    Accepts ``(define-fun x () Real v)`` (z3, cvc5) and ``(= x v)`` (yices).
    """
    out: dict[str, str] = {}

    def walk(e):
        if not isinstance(e, list):
            return
        if len(e) == 5 and e[0] == "define-fun" and e[2] == []:
            name = e[1].strip("|")
            out[name] = sexpr_text(e[4])
            return
        if len(e) == 3 and e[0] == "=" and isinstance(e[1], str) and value_to_fraction(e[1]) is None:
            out[e[1].strip("|")] = sexpr_text(e[2])
            return
        for x in e:
            walk(x)

    try:
        walk(read_sexprs(text))
    except ValueError:
        pass
    return out


def model_values(model: dict[str, str]) -> dict[str, Fraction | None]:
    out = {}
    for k, v in model.items():
        try:
            parsed = read_sexprs(v)
        except ValueError:
            out[k] = None
            continue
        out[k] = value_to_fraction(parsed[0]) if parsed else None
    return out


# ---------------------------------------------------------------------------
# solver processes


class Status(str, enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"
    TIMEOUT = "timeout"
    ERROR = "error"

    def __str__(self) -> str:
        return self.value


def parse_status(output: str) -> Status:
    for line in output.splitlines():
        word = line.strip()
        if word in ("sat", "unsat", "unknown"):
            return Status(word)
    return Status.ERROR


@dataclass(frozen=True)
class SolverConfig:
    name: str
    cmd: tuple[str, ...]
    models: bool = True

    def __post_init__(self):
        if not self.cmd:
            raise ValueError(f"solver {self.name!r} has an empty command")

    def argv(self, script_path: str) -> list[str]:
        if any("{file}" in a for a in self.cmd):
            return [a.replace("{file}", script_path) for a in self.cmd]
        return [*self.cmd, script_path]

    def to_json(self) -> dict:
        return {"name": self.name, "cmd": list(self.cmd), "models": self.models}


DEFAULT_SOLVERS = {
    "z3": SolverConfig("z3", ("z3", "-smt2", "{file}")),
    "cvc5": SolverConfig("cvc5", ("cvc5", "--lang=smt2", "{file}")),
    "yices": SolverConfig("yices", ("yices-smt2", "{file}")),
}


class SolverConfigError(ValueError):
    pass


def load_solver_configs(path: str | os.PathLike) -> list[SolverConfig]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SolverConfigError(f"{path}: {exc}") from exc
    if not isinstance(data, list):
        raise SolverConfigError(f"{path}: expected a JSON list of solver objects")
    out = []
    for i, entry in enumerate(data):
        try:
            out.append(SolverConfig(str(entry["name"]), tuple(entry["cmd"]), bool(entry.get("models", True))))
        except (KeyError, TypeError, ValueError) as exc:
            raise SolverConfigError(f"{path}: entry {i}: {exc}") from exc
    return out


def resolve_solver(name: str, config_path: str | os.PathLike | None = None) -> SolverConfig:
    """Look ``name`` up in the config file (argument or ``$GKINDUCT_SOLVERS``), then the built-ins."""
    config_path = config_path or os.environ.get(SOLVERS_ENV)
    if config_path:
        for cfg in load_solver_configs(config_path):
            if cfg.name == name:
                return cfg
    if name in DEFAULT_SOLVERS:
        return DEFAULT_SOLVERS[name]
    raise SolverConfigError(f"unknown solver {name!r}")


@dataclass
class SolverResult:
    status: Status
    time: float
    model: dict[str, str] | None = None
    raw: str = ""
    stderr: str = ""
    spawn_failed: bool = False

    @property
    def witness(self) -> dict[str, Fraction | None] | None:
        return None if self.model is None else model_values(self.model)


def _kill_group(proc: subprocess.Popen) -> None:
    try:
        os.killpg(proc.pid, signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        pass


def run_solver(script: str, cfg: SolverConfig, timeout: float, want_model: bool | None = None) -> SolverResult:
    """Run ``cfg`` on ``script`` under a wall-clock limit.

    The solver runs in its own process group; on expiry the whole group
    is killed and reaped.
    """
    want_model = cfg.models if want_model is None else want_model
    fd, path = tempfile.mkstemp(suffix=".smt2", prefix="gkinduct-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(script)
        argv = cfg.argv(path)
        start = time.monotonic()
        try:
            proc = subprocess.Popen(
                argv,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                stdin=subprocess.DEVNULL,
                text=True,
                start_new_session=True,
            )
        except OSError as exc:
            return SolverResult(Status.ERROR, 0.0, stderr=f"cannot start {argv[0]!r}: {exc}", spawn_failed=True)
        try:
            out, err = proc.communicate(timeout=timeout)
        except subprocess.TimeoutExpired:
            _kill_group(proc)
            out, err = proc.communicate()
            elapsed = time.monotonic() - start
            return SolverResult(Status.TIMEOUT, round(elapsed, 3), raw=out or "", stderr=err or "")
        finally:
            _kill_group(proc)
        elapsed = round(time.monotonic() - start, 3)
    finally:
        try:
            os.unlink(path)
        except OSError:
            pass
    status = parse_status(out)
    model = None
    if status is Status.SAT and want_model:
        model = parse_model(out)
    if status is Status.ERROR and not err and proc.returncode == 0:
        err = "unrecognized solver output"
    return SolverResult(status, elapsed, model=model, raw=out, stderr=err)


def scripts_declare_before_use(script: str) -> bool:
    """Check that every symbol used in an assert was declared earlier."""
    declared: set[str] = set()
    keywords = {"and", "or", "not", "true", "false", "+", "-", "*", "/", ">", "<", ">=", "<=", "="}

    def used(e) -> Iterable[str]:
        if isinstance(e, list):
            for x in e:
                yield from used(x)
        elif not re.match(r"^-?\d", e) and e not in keywords:
            yield e.strip("|")

    for cmd in read_sexprs(script):
        if not isinstance(cmd, list) or not cmd:
            continue
        if cmd[0] == "declare-const":
            declared.add(cmd[1].strip("|"))
        elif cmd[0] == "assert":
            if any(v not in declared for v in used(cmd[1])):
                return False
    return True


__all__ = [
    "DEFAULT_SOLVERS",
    "SolverConfig",
    "SolverResult",
    "Status",
    "UnsupportedConstruct",
    "emit_script",
    "load_solver_configs",
    "parse_model",
    "parse_status",
    "resolve_solver",
    "run_solver",
]
