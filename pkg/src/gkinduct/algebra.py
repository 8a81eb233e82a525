"""Exact multivariate polynomials and rational functions over the rationals.

Monomials are stored sparsely as tuples of ``(variable, exponent)`` pairs
sorted by variable name.  All coefficients are :class:`fractions.Fraction`.
The monomial order used for leading terms is graded lexicographic with
variables ranked by name (``"X" < "Y" < "x"``), so every polynomial has a
well-defined leading coefficient independent of its context.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Iterator, Mapping, Union

Monomial = tuple[tuple[str, int], ...]
Number = Union[int, Fraction]

ONE_MONO: Monomial = ()


class AlgebraError(ValueError):
    pass


class ZeroDenominator(AlgebraError):
    pass


class DivisionByZeroFunction(ZeroDivisionError):
    pass


class UnboundVariable(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"no value bound for variable {self.name!r}"


class _PoleType:
    """Marker returned by :func:`rf_eval` when the denominator vanishes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Pole"

    def __bool__(self) -> bool:
        return False


Pole = _PoleType()


# ---------------------------------------------------------------------------
# monomials


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """Return ``a / b`` or ``None`` when ``b`` does not divide ``a``."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items()))


def mono_cmp(a: Monomial, b: Monomial) -> int:
    """Graded lexicographic comparison; variables earlier by name rank higher."""
    da, db = mono_degree(a), mono_degree(b)
    if da != db:
        return -1 if da < db else 1
    for (va, ea), (vb, eb) in zip(a, b):
        if va != vb:
            # the monomial carrying the earlier variable is larger there
            return 1 if va < vb else -1
        if ea != eb:
            return -1 if ea < eb else 1
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    return 0


mono_key = cmp_to_key(mono_cmp)


def mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


# ---------------------------------------------------------------------------
# polynomials


def _frac(c: Number) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Immutable sparse polynomial with rational coefficients.

    >>> x, y = Polynomial.var("x"), Polynomial.var("y")
    >>> (x + y) * (x - y)
    Polynomial('x^2 - y^2')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _frac(c)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Number) -> "Polynomial":
        return cls({ONE_MONO: c}) if c else ZERO

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Polynomial":
        if exp == 0:
            return ONE
        return cls._raw({((name, exp),): Fraction(1)})

    @classmethod
    def coerce(cls, value: "Polynomial | Number") -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Polynomial")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise AlgebraError(f"{self} is not constant")
        return self._terms.get(ONE_MONO, Fraction(0))

    def variables(self) -> frozenset[str]:
        return frozenset(v for m in self._terms for v, _ in m)

    def degree(self, var: str | None = None) -> float:
        """Total degree, or degree in ``var``; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return -math.inf
        if var is None:
            return max(mono_degree(m) for m in self._terms)
        return max(dict(m).get(var, 0) for m in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise AlgebraError("zero polynomial has no leading term")
        m = max(self._terms, key=mono_key)
        return m, self._terms[m]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Polynomial.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("polynomial exponents must be non-negative integers")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Number) -> "Polynomial":
        return self * _frac(c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- division -----------------------------------------------------------

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Multivariate division by leading terms (graded-lex).

        The remainder has no term divisible by the divisor's leading
        monomial.  When the divisor divides ``self`` exactly the remainder
        is zero.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = divisor.leading_term()
        rest = dict(self._terms)
        quot: dict[Monomial, Fraction] = {}
        rem: dict[Monomial, Fraction] = {}
        while rest:
            m = max(rest, key=mono_key)
            c = rest[m]
            q = mono_div(m, lm)
            if q is None:
                rem[m] = c
                del rest[m]
                continue
            f = c / lc
            quot[q] = quot.get(q, 0) + f
            for dm, dc in divisor._terms.items():
                mm = mono_mul(q, dm)
                s = rest.get(mm, 0) - f * dc
                if s:
                    rest[mm] = s
                else:
                    rest.pop(mm, None)
        return Polynomial(quot), Polynomial._raw(rem)

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise AlgebraError(f"{divisor} does not divide {self}")
        return q

    def divides(self, other: "Polynomial") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    # -- views in one variable ----------------------------------------------

    def coeffs_in(self, var: str) -> dict[int, "Polynomial"]:
        """Coefficients as a map ``exponent -> polynomial free of var``."""
        out: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            e = 0
            rest = []
            for v, k in m:
                if v == var:
                    e = k
                else:
                    rest.append((v, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Polynomial._raw(t) for e, t in out.items()}

    @staticmethod
    def from_coeffs(var: str, coeffs: Mapping[int, "Polynomial"]) -> "Polynomial":
        total = ZERO
        for e, c in coeffs.items():
            total = total + c * Polynomial.var(var, e)
        return total

    # -- evaluation / substitution -----------------------------------------

    def evaluate(self, point: Mapping[str, object], convert: Callable | None = None):
        """Evaluate at ``point``; all variables must be bound.

        ``convert`` maps each Fraction coefficient into the value domain
        (defaults to exact Fractions).
        """
        if convert is None:
            return self._evaluate_exact(point)
        total = 0
        for m, c in self._terms.items():
            t = convert(c)
            for v, e in m:
                try:
                    val = point[v]
                except KeyError:
                    raise UnboundVariable(v) from None
                t = t * val**e
            total = total + t
        return total

    def _evaluate_exact(self, point: Mapping[str, object]) -> Fraction:
        # Work over the integers: with v = p_v/q_v and L the common
        # coefficient denominator, L * prod q_v^deg_v * self(point) is an integer.
        degs: dict[str, int] = {}
        for m in self._terms:
            for v, e in m:
                if e > degs.get(v, 0):
                    degs[v] = e
        nums: dict[str, int] = {}
        dens: dict[str, int] = {}
        for v in degs:
            try:
                val = point[v]
            except KeyError:
                raise UnboundVariable(v) from None
            if not isinstance(val, (int, Fraction)):
                val = Fraction(val)
            nums[v], dens[v] = val.numerator, val.denominator
        lcd = math.lcm(*(c.denominator for c in self._terms.values())) if self._terms else 1
        total = 0
        for m, c in self._terms.items():
            t = c.numerator * (lcd // c.denominator)
            seen = dict(m)
            for v, dv in degs.items():
                e = seen.get(v, 0)
                if e:
                    t *= nums[v] ** e
                if dv > e:
                    t *= dens[v] ** (dv - e)
            total += t
        scale = lcd
        for v, dv in degs.items():
            scale *= dens[v] ** dv
        return Fraction(total, scale)

    def substitute(self, bindings: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution of polynomials for variables."""
        if not bindings or not (self.variables() & bindings.keys()):
            return self
        powers: dict[tuple[str, int], Polynomial] = {}
        total = ZERO
        for m, c in self._terms.items():
            keep = []
            t = Polynomial.const(c)
            for v, e in m:
                if v in bindings:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = bindings[v] ** e
                    t = t * powers[key]
                else:
                    keep.append((v, e))
            if keep:
                t = t * Polynomial._raw({tuple(keep): Fraction(1)})
            total = total + t
        return total

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        return self.substitute({a: Polynomial.var(b) for a, b in mapping.items()})

    # -- content / normalization -------------------------------------------

    def integer_content(self) -> Fraction:
        """Positive rational ``c`` so that ``self / c`` has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "Polynomial":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.integer_content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        return Polynomial._raw({m: v / c for m, v in self._terms.items()})

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = str(a)
            elif a == 1:
                body = mono_str(m)
            else:
                body = f"{a}*{mono_str(m)}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial('{self}')"


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({ONE_MONO: Fraction(1)})


# ---------------------------------------------------------------------------
# gcd


def _content_in(p: Polynomial, var: str) -> Polynomial:
    g = ZERO
    for c in p.coeffs_in(var).values():
        g = poly_gcd(g, c)
        if g == ONE:
            break
    return g


def _prem(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` in ``var``."""
    n = int(b.degree(var))
    lc_b = b.coeffs_in(var)[n]
    tail_b = b - lc_b * Polynomial.var(var, n)
    r = a
    e = int(a.degree(var)) - n + 1
    while not r.is_zero():
        m = int(r.degree(var))
        if m < n:
            break
        lc_r = r.coeffs_in(var)[m]
        r_tail = r - lc_r * Polynomial.var(var, m)
        # lc_b * r - lc_r * var^(m-n) * b, with the leading terms cancelled
        r = lc_b * r_tail - lc_r * Polynomial.var(var, m - n) * tail_b
        e -= 1
    return r * lc_b**e if e > 0 else r


def _lc(p: Polynomial, var: str) -> Polynomial:
    return p.coeffs_in(var)[int(p.degree(var))]


def _univariate_gcd_degree(a: Polynomial, b: Polynomial) -> int:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return int(a.degree())


def _coprime_by_specialization(a: Polynomial, b: Polynomial, var: str) -> bool:
    """Cheap sufficient test that ``a`` and ``b`` share no factor involving ``var``.

    Substituting integers for the other variables maps the gcd onto a
    divisor of the specialized gcd as long as neither leading
    coefficient in ``var`` vanishes; a constant specialized gcd then
    rules out a common factor of positive degree in ``var``.
    """
    others = sorted((a.variables() | b.variables()) - {var})
    lca = a.coeffs_in(var)[int(a.degree(var))]
    lcb = b.coeffs_in(var)[int(b.degree(var))]
    for attempt in range(3):
        point = {v: Fraction(3 + 2 * i + 7 * attempt) * (-1) ** i for i, v in enumerate(others)}
        if lca.evaluate(point) == 0 or lcb.evaluate(point) == 0:
            continue
        bind = {v: Polynomial.const(c) for v, c in point.items()}
        return _univariate_gcd_degree(a.substitute(bind), b.substitute(bind)) == 0
    return False


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor, normalized (content 1, positive leading coefficient).

    Recursive primitive polynomial remainder sequence over
    ``Q[other variables][main variable]``.
    """
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    if a.is_constant() or b.is_constant():
        return ONE
    va, vb = a.variables(), b.variables()
    common = va & vb
    if not common:
        return ONE
    if va != vb:
        # a variable private to one side can only survive in its content
        for v in sorted(va - vb):
            a = _content_in(a, v)
            if a.is_constant():
                return ONE
        for v in sorted(vb - va):
            b = _content_in(b, v)
            if b.is_constant():
                return ONE
        return poly_gcd(a, b)
    if len(a) == 1 and len(b) == 1:
        ea, eb = dict(next(iter(a.terms))), dict(next(iter(b.terms)))
        m = tuple(sorted((v, min(ea[v], eb[v])) for v in common))
        return Polynomial._raw({m: Fraction(1)})
    var = min(common, key=lambda v: (min(a.degree(v), b.degree(v)), v))
    ca, cb = _content_in(a, var), _content_in(b, var)
    c = poly_gcd(ca, cb)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    if _coprime_by_specialization(pa, pb, var):
        return c
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    # subresultant remainder sequence: the divisions by g * h^delta keep
    # coefficient growth in check without a content gcd at every step
    g = h = ONE
    while True:
        delta = int(pa.degree(var) - pb.degree(var))
        r = _prem(pa, pb, var)
        if r.is_zero():
            break
        if r.degree(var) == 0:
            return c
        pa, pb = pb, r.exact_div(g * h**delta)
        g = _lc(pa, var)
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g**delta).exact_div(h ** (delta - 1))
    return (c * pb.exact_div(_content_in(pb, var))).normalized()


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient ``num/den`` in lowest terms.

    The denominator is integer-primitive with a positive leading
    coefficient, which makes the representation canonical: two equal
    rational functions have identical ``num`` and ``den``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial | Number, den: Polynomial | Number = 1, *, _normal: bool = False):
        num = Polynomial.coerce(num)
        den = Polynomial.coerce(den)
        if not _normal:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den
        self._hash: int | None = None

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls(Polynomial.var(name), ONE, _normal=True)

    @classmethod
    def const(cls, c: Number) -> "RationalFunction":
        c = _frac(c)
        return cls(Polynomial.const(c), ONE, _normal=True)

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return cls(value, ONE, _normal=True)
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to RationalFunction")

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den == ONE

    def constant_value(self) -> Fraction:
        return self.num.constant_value()

    def variables(self) -> frozenset[str]:
        return self.num.variables() | self.den.variables()

    # arithmetic
    def __add__(self, other):
        other = _rf_or_none(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normal=True)

    def __sub__(self, other):
        other = _rf_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _rf_or_none(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rf_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZeroFunction("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("exponents must be non-negative integers")
        # num^n / den^n is already in lowest terms with a normalized denominator
        return RationalFunction(self.num**n, self.den**n, _normal=True)

    def __eq__(self, other):
        other = _rf_or_none(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def substitute(self, bindings: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        names = self.variables() & bindings.keys()
        if not names:
            return self
        if all(bindings[v].is_polynomial() for v in names):
            pb = {v: bindings[v].num for v in names}
            return RationalFunction(self.num.substitute(pb), self.den.substitute(pb))
        return _subs_rational(self.num, bindings) / _subs_rational(self.den, bindings)

    def map_polys(self, fn: Callable[[Polynomial], Polynomial]) -> "RationalFunction":
        return RationalFunction(fn(self.num), fn(self.den))

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1 or "/" in n:
            n = f"({n})"
        d = str(self.den)
        if len(self.den) > 1 or (self.den.terms and next(iter(self.den.terms.values())) != 1):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RationalFunction('{self}')"


def _rf_or_none(value) -> RationalFunction | None:
    try:
        return RationalFunction.coerce(value)
    except TypeError:
        return None


def _subs_rational(p: Polynomial, bindings: Mapping[str, RationalFunction]) -> RationalFunction:
    total = RationalFunction.const(0)
    for m, c in p.terms.items():
        t = RationalFunction.const(c)
        keep = []
        for v, e in m:
            if v in bindings:
                t = t * bindings[v] ** e
            else:
                keep.append((v, e))
        if keep:
            t = t * Polynomial._raw({tuple(keep): Fraction(1)})
        total = total + t
    return total


def _normalize_pair(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero():
        raise ZeroDenominator("denominator is the zero polynomial")
    if num.is_zero():
        return ZERO, ONE
    if not den.is_constant():
        g = poly_gcd(num, den)
        if g != ONE:
            num = num.exact_div(g)
            den = den.exact_div(g)
    c = den.integer_content()
    if den.leading_coefficient() < 0:
        c = -c
    if c != 1:
        num = num * (1 / c)
        den = den * (1 / c)
    return num, den


def rf_normalize(num: Polynomial | Number, den: Polynomial | Number) -> RationalFunction:
    return RationalFunction(num, den)


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def rf_eval(a: RationalFunction, point: Mapping[str, Fraction]):
    """Exact value of ``a`` at ``point``, or :data:`Pole`."""
    missing = a.variables() - point.keys()
    if missing:
        raise UnboundVariable(min(missing))
    d = a.den.evaluate(point)
    if d == 0:
        return Pole
    return Fraction(a.num.evaluate(point)) / d


# ---------------------------------------------------------------------------
# quadratic extensions


def reduce_mod_quadratic(p: Polynomial, y: str, d: Number) -> Polynomial:
    """Rewrite ``p`` modulo ``y^2 - d`` so that ``y`` occurs at most linearly."""
    if y not in p.variables():
        return p
    d = _frac(d)
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        e = dict(m).get(y, 0)
        if e < 2:
            nm, nc = m, c
        else:
            rest = [(v, k) for v, k in m if v != y]
            if e % 2:
                rest.append((y, 1))
            nm = tuple(sorted(rest))
            nc = c * d ** (e // 2)
        s = out.get(nm, 0) + nc
        if s:
            out[nm] = s
        else:
            out.pop(nm, None)
    return Polynomial._raw(out)


def poly_from_iterable(terms: Iterable[tuple[Monomial, Number]]) -> Polynomial:
    out: dict[Monomial, Fraction] = {}
    for m, c in terms:
        m = tuple(sorted(m))
        out[m] = out.get(m, 0) + _frac(c)
    return Polynomial(out)
