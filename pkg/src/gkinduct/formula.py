"""Relational atoms ``lhs op 0`` and boolean formulas over them.

Formulas are immutable.  Build them through :func:`atom`, :func:`conj` and
:func:`disj`, which fold constants, flatten nested connectives and sort
children so that equal formulas have equal representations.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .algebra import Pole, Polynomial, RationalFunction, UnboundVariable, rf_eval

FREE_TERM = "x"
_SHIFTED_FREE = re.compile(r"^x_s(\d+)$")


def free_term(depth: int) -> str:
    """Name of the free term after ``depth`` shifts: ``x``, ``x_s1``, ``x_s2``, ..."""
    return FREE_TERM if depth == 0 else f"{FREE_TERM}_s{depth}"


def free_term_depth(name: str) -> int | None:
    if name == FREE_TERM:
        return 0
    m = _SHIFTED_FREE.match(name)
    return int(m.group(1)) if m else None


def is_radical(name: str) -> bool:
    return name.startswith("sqrt(")


class MissingShiftRule(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"no shift rule for sequence variable {self.name!r}"


class RelOp(enum.Enum):
    GT = ">"
    LT = "<"
    GE = ">="
    LE = "<="
    EQ = "="
    NE = "!="

    @property
    def complement(self) -> "RelOp":
        return _COMPLEMENT[self]

    @property
    def reverse(self) -> "RelOp":
        """The relation with its sides swapped: ``a op b`` iff ``b op.reverse a``."""
        return _REVERSE[self]

    @property
    def is_inequality(self) -> bool:
        return self not in (RelOp.EQ, RelOp.NE)

    def holds(self, value: Fraction) -> bool:
        """Truth of ``value op 0``."""
        if self is RelOp.GT:
            return value > 0
        if self is RelOp.LT:
            return value < 0
        if self is RelOp.GE:
            return value >= 0
        if self is RelOp.LE:
            return value <= 0
        if self is RelOp.EQ:
            return value == 0
        return value != 0

    @classmethod
    def parse(cls, text: str) -> "RelOp":
        return _OP_ALIASES[text]

    def __str__(self) -> str:
        return self.value


_COMPLEMENT = {
    RelOp.GT: RelOp.LE,
    RelOp.LE: RelOp.GT,
    RelOp.LT: RelOp.GE,
    RelOp.GE: RelOp.LT,
    RelOp.EQ: RelOp.NE,
    RelOp.NE: RelOp.EQ,
}
_REVERSE = {
    RelOp.GT: RelOp.LT,
    RelOp.LT: RelOp.GT,
    RelOp.GE: RelOp.LE,
    RelOp.LE: RelOp.GE,
    RelOp.EQ: RelOp.EQ,
    RelOp.NE: RelOp.NE,
}
_OP_ALIASES = {
    ">": RelOp.GT,
    "<": RelOp.LT,
    ">=": RelOp.GE,
    "<=": RelOp.LE,
    "=": RelOp.EQ,
    "==": RelOp.EQ,
    "!=": RelOp.NE,
    "≥": RelOp.GE,
    "≤": RelOp.LE,
    "≠": RelOp.NE,
}


# ---------------------------------------------------------------------------
# formula nodes


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Atom:
    lhs: RationalFunction
    op: RelOp

    def __str__(self) -> str:
        return f"{self.lhs} {self.op} 0"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]

    def __str__(self) -> str:
        return "(" + " & ".join(map(str, self.args)) + ")"


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]

    def __str__(self) -> str:
        return "(" + " | ".join(map(str, self.args)) + ")"


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self) -> str:
        return f"~{self.arg}"


Formula = Union[Const, Atom, And, Or, Not]


def sort_key(f: Formula) -> tuple[int, str]:
    rank = {Const: 0, Atom: 1, Not: 2, And: 3, Or: 4}[type(f)]
    return rank, str(f)


def atom(lhs, op: RelOp | str, rhs=0) -> Formula:
    """The atom ``lhs - rhs op 0``; constant atoms fold to TRUE/FALSE."""
    if isinstance(op, str):
        op = RelOp.parse(op)
    diff = RationalFunction.coerce(lhs) - RationalFunction.coerce(rhs)
    if diff.is_constant():
        return TRUE if op.holds(diff.constant_value()) else FALSE
    return Atom(diff, op)


def _connective(cls, args: Iterable[Formula], unit: Const, absorb: Const) -> Formula:
    flat: set[Formula] = set()
    for a in args:
        if a == absorb:
            return absorb
        if a == unit:
            continue
        if isinstance(a, cls):
            flat.update(a.args)
        else:
            flat.add(a)
    if not flat:
        return unit
    if len(flat) == 1:
        return next(iter(flat))
    return cls(tuple(sorted(flat, key=sort_key)))


def conj(*args: Formula | Iterable[Formula]) -> Formula:
    return _connective(And, _spread(args), TRUE, FALSE)


def disj(*args: Formula | Iterable[Formula]) -> Formula:
    return _connective(Or, _spread(args), FALSE, TRUE)


def _spread(args) -> Iterator[Formula]:
    for a in args:
        if isinstance(a, (Const, Atom, And, Or, Not)):
            yield a
        else:
            yield from a


def conjuncts(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, And):
        return f.args
    if f == TRUE:
        return ()
    return (f,)


def iter_atoms(f: Formula) -> Iterator[Atom]:
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, (And, Or)):
        for a in f.args:
            yield from iter_atoms(a)
    elif isinstance(f, Not):
        yield from iter_atoms(f.arg)


def variables(f: Formula) -> frozenset[str]:
    out: set[str] = set()
    for a in iter_atoms(f):
        out |= a.lhs.variables()
    return frozenset(out)


def map_atoms(f: Formula, fn: Callable[[Atom], Formula]) -> Formula:
    """Rebuild ``f`` with every atom replaced by ``fn(atom)``."""
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, And):
        return conj(map_atoms(a, fn) for a in f.args)
    if isinstance(f, Or):
        return disj(map_atoms(a, fn) for a in f.args)
    if isinstance(f, Not):
        return Not(map_atoms(f.arg, fn))
    return f


# ---------------------------------------------------------------------------
# operations


def negate(f: Formula) -> Formula:
    """Logical complement in negation normal form."""
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Atom):
        return Atom(f.lhs, f.op.complement)
    if isinstance(f, And):
        return disj(negate(a) for a in f.args)
    if isinstance(f, Or):
        return conj(negate(a) for a in f.args)
    return nnf(f.arg)


def nnf(f: Formula) -> Formula:
    if isinstance(f, Not):
        return negate(f.arg)
    if isinstance(f, And):
        return conj(nnf(a) for a in f.args)
    if isinstance(f, Or):
        return disj(nnf(a) for a in f.args)
    return f


def _as_rf(value) -> RationalFunction:
    return RationalFunction.coerce(value)


def substitute(f, bindings: Mapping[str, object]):
    """Simultaneous substitution into a formula or expression."""
    if not bindings:
        return f
    rb = {k: _as_rf(v) for k, v in bindings.items()}
    if isinstance(f, (RationalFunction, Polynomial)):
        return _as_rf(f).substitute(rb)
    return map_atoms(f, lambda a: atom(a.lhs.substitute(rb), a.op))


@dataclass(frozen=True)
class ShiftRule:
    """``s(seq_var) = shift_expr``; the expression may use ``x`` and ``x_s1`` (that is, s(x))."""

    seq_var: str
    shift_expr: RationalFunction


class Shifter:
    """Applies the shift operator for a fixed set of rules, caching deep shifts."""

    def __init__(self, rules: Sequence[ShiftRule]):
        self.rules = {r.seq_var: _as_rf(r.shift_expr) for r in rules}
        self._levels: list[dict[str, RationalFunction]] = [
            {v: RationalFunction.var(v) for v in self.rules}
        ]

    def level(self, k: int) -> dict[str, RationalFunction]:
        """``s^k`` of every sequence variable, over the base symbols."""
        while len(self._levels) <= k:
            i = len(self._levels)
            prev = dict(self._levels[-1])
            prev[FREE_TERM] = RationalFunction.var(free_term(i - 1))
            prev[free_term(1)] = RationalFunction.var(free_term(i))
            self._levels.append({v: e.substitute(prev) for v, e in self.rules.items()})
        return self._levels[k]

    def bindings(self, names: Iterable[str], k: int) -> dict[str, RationalFunction]:
        lvl = self.level(k)
        out: dict[str, RationalFunction] = {}
        for name in names:
            depth = free_term_depth(name)
            if depth is not None:
                out[name] = RationalFunction.var(free_term(depth + k))
            elif name in lvl:
                out[name] = lvl[name]
            elif is_radical(name):
                continue
            else:
                raise MissingShiftRule(name)
        return out

    def __call__(self, f, k: int):
        if k < 0:
            raise ValueError("shift depth must be non-negative")
        if k == 0:
            return f
        if isinstance(f, (RationalFunction, Polynomial)):
            rf = _as_rf(f)
            return rf.substitute(self.bindings(rf.variables(), k))
        return map_atoms(f, lambda a: atom(a.lhs.substitute(self.bindings(a.lhs.variables(), k)), a.op))


def shift(f, rules: Sequence[ShiftRule] | Shifter, k: int = 1):
    """``k``-fold shift of a formula or expression.

    Sequence variables are replaced by their shifted values, and the free
    terms move ``x -> x_s{k}``, ``x_s{i} -> x_s{i+k}``.  Radicals are left
    alone; any other variable without a rule raises :class:`MissingShiftRule`.
    """
    shifter = rules if isinstance(rules, Shifter) else Shifter(rules)
    return shifter(f, k)


def eval_formula(f: Formula, point: Mapping[str, Fraction]) -> bool | None:
    """Three-valued evaluation; ``None`` means undefined (an atom hit a pole)."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        v = rf_eval(f.lhs, point)
        if v is Pole:
            return None
        return f.op.holds(v)
    if isinstance(f, Not):
        v = eval_formula(f.arg, point)
        return None if v is None else not v
    values = [eval_formula(a, point) for a in f.args]
    if any(v is None for v in values):
        return None
    return all(values) if isinstance(f, And) else any(values)


__all__ = [
    "FALSE",
    "TRUE",
    "And",
    "Atom",
    "Const",
    "Formula",
    "MissingShiftRule",
    "Not",
    "Or",
    "RelOp",
    "ShiftRule",
    "Shifter",
    "UnboundVariable",
    "atom",
    "conj",
    "conjuncts",
    "disj",
    "eval_formula",
    "free_term",
    "iter_atoms",
    "map_atoms",
    "negate",
    "nnf",
    "shift",
    "substitute",
    "variables",
]
