import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkinduct.algebra import Pole, Polynomial, RationalFunction, rf_eval
from gkinduct.formula import And, Atom, Or, RelOp, atom, conj, disj, eval_formula, iter_atoms, variables
from gkinduct.preprocess import (
    ClearedAtom,
    NegativeRadicand,
    Strategy,
    apply_strategy,
    clear_bdc,
    clear_ddc,
    clear_equality,
    clear_guard,
    encode_algebraic,
    encode_radicals_rf,
    has_division,
    normalize_atom,
    radicands,
)
from gkinduct.syntax import parse_expr, parse_relation

from strategies import points, polynomials, random_point, random_poly

x = Polynomial.var("x")
INEQ = [RelOp.GT, RelOp.LT, RelOp.GE, RelOp.LE]


def px(text):
    return parse_expr(text).num


def ca(f, g, op):
    return ClearedAtom(px(f), px(g), RelOp.parse(op))


class TestNormalize:
    def test_subtraction(self):
        # P/Q >= F/G  ->  (PG - FQ)/(QG)
        a = normalize_atom(parse_expr("x/(x + 1)"), ">=", parse_expr("1/(x - 1)"))
        assert (a.f, a.g) == (px("x^2 - 2*x - 1"), px("x^2 - 1"))
        assert a.op is RelOp.GE

    def test_polynomial(self):
        a = normalize_atom(parse_expr("x"), RelOp.GT)
        assert (a.f, a.g, a.is_polynomial) == (x, Polynomial.const(1), True)

    def test_reciprocal(self):
        a = normalize_atom(parse_expr("1/x"), RelOp.GE, 1)
        assert (a.f, a.g, a.op) == (px("1 - x"), x, RelOp.GE)

    def test_cancels(self):
        a = normalize_atom(parse_expr("(x^2 - 1)/(x - 1)"), "<", 0)
        assert a.is_polynomial and a.f == px("x + 1")

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            ClearedAtom(x, Polynomial(), RelOp.GT)


class TestClearing:
    A = ("1 - x", "x", ">=")

    def test_bdc(self):
        assert clear_bdc(ca(*self.A)) == conj(parse_relation("(1 - x)*x >= 0"), parse_relation("x != 0"))

    def test_ddc(self):
        expected = disj(
            conj(parse_relation("x > 0"), parse_relation("1 - x >= 0")),
            conj(parse_relation("x < 0"), parse_relation("1 - x <= 0")),
        )
        assert clear_ddc(ca(*self.A)) == expected
        # same truth as the textbook "0 >= 1 - x" branch
        for v in (-2, 0, 1, 3):
            pt = {"x": Fraction(v)}
            alt = eval_formula(parse_relation("x < 0"), pt) and eval_formula(parse_relation("0 >= 1 - x"), pt)
            assert eval_formula(expected.args[0], pt) == alt or eval_formula(expected.args[1], pt) == alt

    def test_guard(self):
        f = clear_guard(ca(*self.A))
        assert f == conj(Atom(parse_expr("(1 - x)/x"), RelOp.GE), parse_relation("x != 0"))
        assert has_division(f)

    def test_equality(self):
        assert clear_equality(ca("x - 1", "x", "=")) == conj(parse_relation("x - 1 = 0"), parse_relation("x != 0"))

    def test_equality_zero_numerator(self):
        assert clear_equality(ClearedAtom(Polynomial(), x, RelOp.EQ)) == parse_relation("x != 0")

    @pytest.mark.parametrize("clear", [clear_bdc, clear_ddc, clear_guard, clear_equality])
    def test_polynomial_passthrough(self, clear):
        assert clear(ca("x - 2", "1", ">")) == parse_relation("x > 2")

    @pytest.mark.parametrize("clear", [clear_bdc, clear_ddc, clear_guard])
    def test_equalities_route_to_equality_rule(self, clear):
        a = ca("x - 1", "x", "!=")
        assert clear(a) == clear_equality(a)

    def test_ddc_false_at_pole(self):
        f = clear_ddc(ca(*self.A))
        assert eval_formula(f, {"x": Fraction(0)}) is False

    def test_bdc_degree_rises(self):
        # numerator of the Zhat shift difference against its own denominator
        f, g = px("x^4 + x^2 + 1"), px("x^2 + x + 1")
        a = normalize_atom(RationalFunction(f, g), RelOp.GE, parse_expr("x"))
        prod = [b for b in iter_atoms(clear_bdc(a)) if b.op is RelOp.GE][0]
        assert prod.lhs.num.degree() == a.f.degree() + a.g.degree()


@st.composite
def cleared_atoms(draw):
    f = draw(polynomials())
    g = draw(polynomials())
    if g.is_zero():
        g = Polynomial.const(1)
    rf = RationalFunction(f, g)
    return ClearedAtom(rf.num, rf.den, draw(st.sampled_from(INEQ)))


@settings(max_examples=200, deadline=None)
@given(cleared_atoms(), points)
def test_bdc_equals_ddc_and_oracle(a, pt):
    b, d = eval_formula(clear_bdc(a), pt), eval_formula(clear_ddc(a), pt)
    assert b is not None and d is not None
    assert b == d
    value = rf_eval(RationalFunction(a.f, a.g), pt)
    if value is Pole:
        assert b is False
    else:
        assert b == a.op.holds(value)


@settings(max_examples=200, deadline=None)
@given(cleared_atoms())
def test_degree_bounds(a):
    bound = max(a.f.degree(), a.g.degree())
    for v in a.f.variables() | a.g.variables():
        vb = max(a.f.degree(v), a.g.degree(v))
        for b in iter_atoms(clear_ddc(a)):
            assert b.lhs.num.degree(v) <= vb
        for b in iter_atoms(clear_bdc(a)):
            assert b.lhs.num.degree(v) <= a.f.degree(v) + a.g.degree(v)
    for b in iter_atoms(clear_ddc(a)):
        assert b.lhs.num.degree() <= bound


def _mixed_formula(rng, n_rational, n_poly):
    V = ["x", "y"]
    atoms = []
    for _ in range(n_rational):
        while True:
            g = random_poly(rng, V, 2, max_terms=3)
            if not g.is_constant():
                break
        atoms.append(atom(RationalFunction(random_poly(rng, V, 2, max_terms=3), g), rng.choice(INEQ)))
    for _ in range(n_poly):
        atoms.append(atom(random_poly(rng, V, 2, max_terms=3), rng.choice(INEQ)))
    f = conj(disj(atoms[::2]), conj(atoms[1::2]))
    # constant atoms fold away, so count on the built formula
    return f, sum(1 for a in iter_atoms(f) if not a.lhs.is_polynomial())


@pytest.mark.parametrize("seed", range(20))
def test_atom_counts(seed):
    rng = random.Random(seed)
    f, n = _mixed_formula(rng, 4, 3)
    total = len(list(iter_atoms(f)))
    # guard and bdc: one extra g != 0 per rational atom; ddc: four atoms
    # (two guards, two branches) in place of one, so growth stays linear
    assert len(list(iter_atoms(apply_strategy(f, Strategy.GUARD)))) == total + n
    assert len(list(iter_atoms(apply_strategy(f, Strategy.BDC)))) == total + n
    ddc = apply_strategy(f, Strategy.DDC)
    assert len(list(iter_atoms(ddc))) == total + 3 * n
    assert not has_division(apply_strategy(f, "bdc")) and not has_division(ddc)
    for a in iter_atoms(f):
        if not a.lhs.is_polynomial():
            out = clear_ddc(ClearedAtom.from_atom(a))
            assert isinstance(out, Or) and len(out.args) == 2
            assert all(isinstance(c, And) and len(c.args) == 2 for c in out.args)


def test_atom_counts_exact():
    f = conj(
        parse_relation("1/x > 1"),
        disj(parse_relation("y/(x + 1) <= 2"), parse_relation("x*y > 3")),
        parse_relation("x > 0"),
    )
    assert len(list(iter_atoms(apply_strategy(f, "guard")))) == 6
    assert len(list(iter_atoms(apply_strategy(f, "bdc")))) == 6
    ddc = apply_strategy(f, "ddc")
    assert len(list(iter_atoms(ddc))) == 2 * 4 + 2


def test_polynomial_formula_untouched():
    f = conj(parse_relation("x > 0"), disj(parse_relation("x*y <= 1"), parse_relation("y = 2")))
    for s in Strategy:
        assert apply_strategy(f, s) == f


@pytest.mark.parametrize("seed", range(5))
def test_zhat_refutation_bdc_vs_ddc(seed):
    from gkinduct import examples
    from gkinduct.induction import build_refutation

    f = build_refutation(examples.load("zhat"), 1)
    b, d = apply_strategy(f, "bdc"), apply_strategy(f, "ddc")
    names = sorted(variables(f))
    rng = random.Random(seed)
    for _ in range(20):
        pt = random_point(rng, names)
        assert eval_formula(b, pt) == eval_formula(d, pt)


class TestRadicals:
    def test_sqrt5(self):
        f = encode_algebraic(parse_relation("G*sqrt(5) > 1"))
        assert f == conj(parse_relation("G*y_5 > 1"), parse_relation("y_5^2 = 5"), parse_relation("y_5 > 0"))

    def test_two_radicands(self):
        f = encode_algebraic(parse_relation("sqrt(2) + sqrt(5) > x"))
        assert radicands(parse_relation("sqrt(2) + sqrt(5) > x")) == [2, 5]
        side = [a for a in iter_atoms(f) if a.lhs.variables() <= {"y_2", "y_5"} and len(a.lhs.variables()) == 1]
        assert len(side) == 4

    def test_identity(self):
        f = parse_relation("x > 1")
        assert encode_algebraic(f) is f

    def test_reduction_toggle(self):
        f = parse_relation("sqrt(5)^3 > x")
        assert encode_algebraic(f, reduce=True) == conj(
            parse_relation("5*y_5 > x"), parse_relation("y_5^2 = 5"), parse_relation("y_5 > 0")
        )
        assert encode_algebraic(f, reduce=False) == conj(
            parse_relation("y_5^3 > x"), parse_relation("y_5^2 = 5"), parse_relation("y_5 > 0")
        )

    def test_negative_radicand(self):
        with pytest.raises(NegativeRadicand):
            parse_expr("sqrt(-5)")
        with pytest.raises(NegativeRadicand):
            encode_algebraic(Atom(RationalFunction.var("sqrt(-3)"), RelOp.GT))

    def test_problem(self):
        from gkinduct import examples

        p, side = encode_algebraic(examples.load("signpattern_sqrt5"))
        assert side == conj(parse_relation("y_5^2 = 5"), parse_relation("y_5 > 0"))
        assert not any("sqrt" in v for d in p.sequence_vars for v in d.init.variables() | d.shift_rule.shift_expr.variables())


RADICALS = [2, 3, 5]


@st.composite
def radical_exprs(draw):
    ds = draw(st.lists(st.sampled_from(RADICALS), min_size=1, max_size=2, unique=True))
    f = draw(polynomials(variables=("x", *(f"sqrt({d})" for d in ds)), max_degree=5))
    g = draw(polynomials(variables=("x", *(f"sqrt({d})" for d in ds)), max_degree=3))
    return ds, f, g


@settings(max_examples=150, deadline=None)
@given(radical_exprs(), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_encoding_agrees_numerically(case, xv):
    ds, f, g = case
    mpmath.mp.dps = 50
    roots = {f"sqrt({d})": mpmath.sqrt(d) for d in ds}
    ys = {f"y_{d}": mpmath.sqrt(d) for d in ds}
    conv = lambda c: mpmath.mpf(c.numerator) / c.denominator
    xm = conv(xv)
    for p in (f, g):
        enc = encode_radicals_rf(RationalFunction(p), ds, reduce=True)
        for q in (enc.num, enc.den):
            for d in ds:
                assert q.degree(f"y_{d}") <= 1
        orig = p.evaluate({"x": xm, **roots}, convert=conv)
        new = enc.num.evaluate({"x": xm, **ys}, convert=conv) / enc.den.evaluate({"x": xm, **ys}, convert=conv)
        assert abs(orig - new) <= mpmath.mpf("1e-9") * max(1, abs(orig))
