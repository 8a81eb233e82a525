"""Infix concrete syntax for expressions and relations.

Grammar (usual precedence, ``^`` binds tightest and takes a non-negative
integer literal)::

    relation := expr RELOP expr | "true" | "false"
    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("-" | "+") unary | power
    power    := primary ("^" INT)*
    primary  := NUMBER | NAME | "s(x)" | "sqrt(" INT ")" | "(" expr ")"

``s(x)`` denotes the shifted free term and is read as the variable
``x_s1``; ``sqrt(d)`` is kept as the opaque variable ``sqrt(d)`` until
radical encoding replaces it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Mapping

from .algebra import RationalFunction
from .formula import FALSE, TRUE, Formula, RelOp, atom, free_term


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        if pos is not None:
            message = f"{message} at column {pos + 1} in {text!r}"
        super().__init__(message)
        self.pos = pos


class UnknownSymbol(ParseError):
    pass


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<rel>>=|<=|!=|==|[<>=≥≤≠])
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def radical_name(d: int) -> str:
    return f"sqrt({d})"


class _Parser:
    def __init__(self, text: str, rename: Mapping[str, str] | None, allowed: Collection[str] | None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.rename = rename or {}
        self.allowed = allowed

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", self.text, t.pos)
        return t

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.tok.pos)

    def symbol(self, name: str, pos: int) -> RationalFunction:
        name = self.rename.get(name, name)
        if self.allowed is not None and name not in self.allowed and not name.startswith("sqrt("):
            raise UnknownSymbol(f"unknown symbol {name!r}", self.text, pos)
        return RationalFunction.var(name)

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self.tok.text in ("*", "/"):
            t = self.next()
            rhs = self.unary()
            if t.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", self.text, t.pos)
                value = value / rhs
        return value

    def unary(self) -> RationalFunction:
        if self.tok.text == "-":
            self.next()
            return -self.unary()
        if self.tok.text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.primary()
        exps = []
        while self.tok.text == "^":
            self.next()
            exps.append(self.exponent())
        e = 1
        for k in reversed(exps):
            e = k**e
        return base**e if exps else base

    def exponent(self) -> int:
        paren = self.tok.text == "("
        if paren:
            self.next()
        t = self.next()
        if t.kind != "num" or "." in t.text:
            raise ParseError("exponent must be a non-negative integer literal", self.text, t.pos)
        if paren:
            self.expect(")")
        return int(t.text)

    def primary(self) -> RationalFunction:
        t = self.next()
        if t.kind == "num":
            return RationalFunction.const(Fraction(t.text))
        if t.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "name":
            if t.text == "s" and self.tok.text == "(":
                self.next()
                arg = self.next()
                if arg.text != "x":
                    raise ParseError("s(...) applies only to the free term x", self.text, arg.pos)
                self.expect(")")
                return self.symbol(free_term(1), t.pos)
            if t.text == "sqrt" and self.tok.text == "(":
                self.next()
                neg = self.tok.text == "-"
                if neg:
                    self.next()
                arg = self.next()
                if arg.kind != "num" or "." in arg.text:
                    raise ParseError("sqrt takes a positive integer literal", self.text, arg.pos)
                self.expect(")")
                d = -int(arg.text) if neg else int(arg.text)
                if d <= 0:
                    from .preprocess import NegativeRadicand

                    raise NegativeRadicand(f"sqrt({d}) is not a positive radicand")
                return RationalFunction.var(radical_name(d))
            return self.symbol(t.text, t.pos)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", self.text, t.pos)

    def done(self):
        if self.tok.kind != "end":
            self.fail(f"unexpected trailing {self.tok.text!r}")


def parse_expr(
    text: str,
    rename: Mapping[str, str] | None = None,
    allowed: Collection[str] | None = None,
) -> RationalFunction:
    """Parse an arithmetic expression into a normalized rational function.

    ``rename`` maps source identifiers to variable names (after ``s(x)`` is
    read as ``x_s1``); ``allowed`` restricts the permitted names.
    """
    p = _Parser(text, rename, allowed)
    value = p.expr()
    p.done()
    return value


def parse_relation(
    text: str,
    rename: Mapping[str, str] | None = None,
    allowed: Collection[str] | None = None,
) -> Formula:
    stripped = text.strip().lower()
    if stripped == "true":
        return TRUE
    if stripped == "false":
        return FALSE
    p = _Parser(text, rename, allowed)
    lhs = p.expr()
    t = p.next()
    if t.kind != "rel":
        raise ParseError("expected a relation symbol", text, t.pos)
    rhs = p.expr()
    p.done()
    return atom(lhs, RelOp.parse(t.text), rhs)
