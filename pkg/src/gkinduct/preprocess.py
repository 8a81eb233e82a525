"""Rewriting rational atoms and square roots into polynomial QF_NRA form."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .algebra import ONE, Polynomial, RationalFunction, reduce_mod_quadratic
from .formula import Atom, Formula, RelOp, atom, conj, disj, iter_atoms, map_atoms


class NegativeRadicand(ValueError):
    pass


class Strategy(str, enum.Enum):
    GUARD = "guard"
    BDC = "bdc"
    DDC = "ddc"

    @classmethod
    def parse(cls, text: "str | Strategy") -> "Strategy":
        if isinstance(text, Strategy):
            return text
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown strategy {text!r} (expected guard, bdc or ddc)") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ClearedAtom:
    """``f/g op 0`` with ``gcd(f, g) = 1``; ``g == 1`` iff the atom is polynomial."""

    f: Polynomial
    g: Polynomial
    op: RelOp

    def __post_init__(self):
        if self.g.is_zero():
            raise ValueError("denominator must be nonzero")

    @classmethod
    def from_atom(cls, a: Atom) -> "ClearedAtom":
        return cls(a.lhs.num, a.lhs.den, a.op)

    @property
    def is_polynomial(self) -> bool:
        return self.g == ONE


def normalize_atom(lhs, op: RelOp | str, rhs=0) -> ClearedAtom:
    """Move everything to one side and cancel: ``lhs - rhs = f/g`` in lowest terms."""
    if isinstance(op, str):
        op = RelOp.parse(op)
    diff = RationalFunction.coerce(lhs) - RationalFunction.coerce(rhs)
    return ClearedAtom(diff.num, diff.den, op)


def _poly_atom(p: Polynomial, op: RelOp) -> Formula:
    return atom(p, op)


def clear_bdc(a: ClearedAtom) -> Formula:
    if a.is_polynomial:
        return _poly_atom(a.f, a.op)
    if not a.op.is_inequality:
        return clear_equality(a)
    return conj(_poly_atom(a.f * a.g, a.op), _poly_atom(a.g, RelOp.NE))


def clear_ddc(a: ClearedAtom) -> Formula:
    if a.is_polynomial:
        return _poly_atom(a.f, a.op)
    if not a.op.is_inequality:
        return clear_equality(a)
    # 0 op f  <=>  f op.reverse 0; constant f is kept unfolded so each
    # rational atom maps to exactly one two-way disjunction
    f = RationalFunction(a.f, ONE, _normal=True)
    return disj(
        conj(_poly_atom(a.g, RelOp.GT), Atom(f, a.op)),
        conj(_poly_atom(a.g, RelOp.LT), Atom(f, a.op.reverse)),
    )


def clear_equality(a: ClearedAtom) -> Formula:
    if a.is_polynomial:
        return _poly_atom(a.f, a.op)
    return conj(_poly_atom(a.f, a.op), _poly_atom(a.g, RelOp.NE))


def clear_guard(a: ClearedAtom) -> Formula:
    """Keep ``f/g op 0`` in division form and add ``g != 0``."""
    if a.is_polynomial:
        return _poly_atom(a.f, a.op)
    if not a.op.is_inequality:
        return clear_equality(a)
    return conj(Atom(RationalFunction(a.f, a.g, _normal=True), a.op), _poly_atom(a.g, RelOp.NE))


_CLEARERS = {Strategy.GUARD: clear_guard, Strategy.BDC: clear_bdc, Strategy.DDC: clear_ddc}


def apply_strategy(f: Formula, strategy: Strategy | str) -> Formula:
    """Rewrite each rational atom in place; polynomial atoms pass through."""
    clear = _CLEARERS[Strategy.parse(strategy)]

    def rewrite(a: Atom) -> Formula:
        if a.lhs.is_polynomial():
            return a
        return clear(ClearedAtom.from_atom(a))

    return map_atoms(f, rewrite)


def has_division(f: Formula) -> bool:
    return any(not a.lhs.is_polynomial() for a in iter_atoms(f))


# ---------------------------------------------------------------------------
# square roots

_RADICAL = re.compile(r"^sqrt\((-?\d+)\)$")


def expr_radicands(rf: RationalFunction) -> set[int]:
    return {int(m.group(1)) for m in map(_RADICAL.match, rf.variables()) if m}


def radicands(f: Formula) -> list[int]:
    found: set[int] = set()
    for a in iter_atoms(f):
        found |= expr_radicands(a.lhs)
    return sorted(found)


def radical_variable(d: int) -> str:
    return f"y_{d}"


def encode_radicals_rf(rf: RationalFunction, ds, reduce: bool = True) -> RationalFunction:
    names = {f"sqrt({d})": radical_variable(d) for d in ds}
    present = {k: v for k, v in names.items() if k in rf.variables()}
    if not present:
        return rf
    num = rf.num.rename(present)
    den = rf.den.rename(present)
    if reduce:
        for d in ds:
            y = radical_variable(d)
            num = reduce_mod_quadratic(num, y, d)
            den = reduce_mod_quadratic(den, y, d)
    return RationalFunction(num, den)


def side_conditions(ds) -> Formula:
    clauses = []
    for d in ds:
        y = Polynomial.var(radical_variable(d))
        clauses.append(atom(y * y, RelOp.EQ, d))
        clauses.append(atom(y, RelOp.GT))
    return conj(clauses)


def encode_algebraic(target, reduce: bool = True):
    """Replace each ``sqrt(d)`` by a fresh ``y_d`` constrained by ``y_d^2 = d`` and ``y_d > 0``.

    With ``reduce`` every polynomial is rewritten modulo ``y_d^2 - d`` so
    ``y_d`` occurs at most linearly.  A :class:`Formula` comes back with
    the side conditions conjoined; a problem comes back as
    ``(encoded_problem, side_conditions)``.
    """
    if not isinstance(target, (Atom,)) and hasattr(target, "sequence_vars"):
        from .induction import encode_problem_radicals

        return encode_problem_radicals(target, reduce)
    ds = radicands(target)
    for d in ds:
        if d <= 0:
            raise NegativeRadicand(f"sqrt({d}) is not a positive radicand")
    if not ds:
        return target
    body = map_atoms(target, lambda a: atom(encode_radicals_rf(a.lhs, ds, reduce), a.op))
    return conj(body, side_conditions(ds))


__all__ = [
    "ClearedAtom",
    "NegativeRadicand",
    "Strategy",
    "apply_strategy",
    "clear_bdc",
    "clear_ddc",
    "clear_equality",
    "clear_guard",
    "encode_algebraic",
    "has_division",
    "normalize_atom",
    "radicands",
]
