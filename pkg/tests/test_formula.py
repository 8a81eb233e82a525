from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gkinduct.algebra import Polynomial, RationalFunction, UnboundVariable
from gkinduct.formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    MissingShiftRule,
    Not,
    Or,
    RelOp,
    ShiftRule,
    atom,
    conj,
    disj,
    eval_formula,
    negate,
    nnf,
    shift,
    substitute,
    variables,
)
from gkinduct.syntax import parse_expr, parse_relation

RULES = [
    ShiftRule("X", parse_expr("X + 1")),
    ShiftRule("Y", parse_expr("Y + s(x)")),
    ShiftRule("Z", parse_expr("Z*s(x)")),
    ShiftRule("W", parse_expr("W + 1/s(x)")),
]


def rel(text):
    return parse_relation(text)


class TestRelOp:
    def test_complement_and_reverse_are_involutions(self):
        for op in RelOp:
            assert op.complement.complement is op
            assert op.reverse.reverse is op

    @pytest.mark.parametrize("v", [Fraction(-1), Fraction(0), Fraction(1, 3)])
    def test_complement_flips_truth(self, v):
        for op in RelOp:
            assert op.holds(v) != op.complement.holds(v)
            assert op.holds(v) == op.reverse.holds(-v)


class TestNegate:
    def test_claim_negation(self):
        assert negate(rel("Z <= 1")) == rel("Z > 1")

    def test_equality_complement(self):
        assert negate(rel("x*y = 0")) == rel("x*y != 0")

    def test_double_negation(self):
        a = rel("x > 0")
        assert negate(Not(a)) == a
        assert nnf(Not(Not(a))) == a

    def test_de_morgan(self):
        f = conj(rel("x > 0"), disj(rel("y < 1"), rel("x = y")))
        assert negate(f) == disj(rel("x <= 0"), conj(rel("y >= 1"), rel("x != y")))

    def test_constants(self):
        assert negate(TRUE) == FALSE and negate(FALSE) == TRUE


class TestShift:
    def test_sum_counter(self):
        assert shift(rel("X = Y"), RULES, 1) == rel("X + 1 = Y + s(x)")

    def test_product(self):
        assert shift(rel("Z <= 1"), RULES, 1) == rel("Z*s(x) <= 1")

    def test_identity(self):
        f = rel("Z <= 1")
        assert shift(f, RULES, 0) is f

    def test_twice(self):
        # by hand: Z -> Z*x_s1 -> Z*x_s1*x_s2
        expected = atom(parse_expr("Z") * Polynomial.var("x_s1") * Polynomial.var("x_s2"), RelOp.LE, 1)
        assert shift(rel("Z <= 1"), RULES, 2) == expected

    def test_free_term_moves(self):
        assert shift(rel("x > 0"), RULES, 3) == atom(RationalFunction.var("x_s3"), RelOp.GT)

    def test_expression(self):
        assert shift(parse_expr("Y"), RULES, 2) == parse_expr("Y") + RationalFunction.var("x_s1") + RationalFunction.var(
            "x_s2"
        )

    def test_missing_rule(self):
        with pytest.raises(MissingShiftRule) as exc:
            shift(rel("Q > 0"), RULES, 1)
        assert exc.value.name == "Q"

    def test_radicals_are_constants(self):
        f = rel("Z*sqrt(5) > 1")
        assert shift(f, RULES, 1) == rel("Z*s(x)*sqrt(5) > 1")


SYMS = ["X", "Y", "Z", "W", "x", "s(x)"]


@st.composite
def exprs(draw):
    n = draw(st.integers(1, 3))
    parts = []
    for _ in range(n):
        c = draw(st.integers(-3, 3))
        factors = draw(st.lists(st.sampled_from(SYMS), max_size=2))
        parts.append("*".join([str(c), *factors]))
    return " + ".join(parts)


@st.composite
def formulas(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        op = draw(st.sampled_from([">", "<", ">=", "<=", "=", "!="]))
        return parse_relation(f"{draw(exprs())} {op} {draw(st.integers(-2, 2))}")
    kids = draw(st.lists(formulas(depth=depth - 1), min_size=1, max_size=3))
    return conj(kids) if draw(st.booleans()) else disj(kids)


@settings(max_examples=60, deadline=None)
@given(formulas(), st.integers(0, 5), st.integers(0, 5))
def test_shift_composition(f, a, b):
    assume(a + b <= 5)
    assert shift(shift(f, RULES, a), RULES, b) == shift(f, RULES, a + b)


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_negate_involution(f):
    assert negate(negate(f)) == f


POINT = st.fixed_dictionaries(
    {v: st.fractions(min_value=-4, max_value=4, max_denominator=5) for v in ["X", "Y", "Z", "W", "x", "x_s1"]}
)


@settings(max_examples=150, deadline=None)
@given(formulas(), POINT)
def test_negate_complements_truth(f, pt):
    v = eval_formula(f, pt)
    assume(v is not None)
    assert eval_formula(negate(f), pt) is (not v)


@settings(max_examples=100, deadline=None)
@given(formulas(), POINT, st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_substitute_then_evaluate(f, pt, c):
    # Z := x + c, X := W*Y
    bindings = {"Z": parse_expr("x") + c, "X": parse_expr("W*Y")}
    composed = dict(pt, Z=pt["x"] + c, X=pt["W"] * pt["Y"])
    lhs = eval_formula(substitute(f, bindings), pt)
    rhs = eval_formula(f, composed)
    assume(lhs is not None and rhs is not None)
    assert lhs == rhs


class TestSubstitute:
    def test_single(self):
        assert substitute(rel("Z <= 1"), {"Z": RationalFunction.var("x_1")}) == atom(
            RationalFunction.var("x_1"), RelOp.LE, 1
        )

    def test_initial_instance(self):
        f = substitute(rel("X = Y"), {"X": 1, "Y": RationalFunction.var("x_1")})
        assert f == atom(1, RelOp.EQ, RationalFunction.var("x_1"))

    def test_empty(self):
        f = rel("X = Y")
        assert substitute(f, {}) is f

    def test_constant_result_folds(self):
        assert substitute(rel("Z <= 1"), {"Z": 1}) == TRUE


class TestEval:
    def test_true(self):
        f = conj(rel("x > 0"), rel("1/x > 0"))
        assert eval_formula(f, {"x": Fraction(2)}) is True

    def test_pole_is_undefined(self):
        assert eval_formula(rel("1/x > 0"), {"x": Fraction(0)}) is None
        assert eval_formula(conj(rel("x > 1"), rel("1/x > 0")), {"x": Fraction(0)}) is None

    def test_refutation_at_ones(self):
        f = conj(rel("x > 0"), rel("s(x) > 0"), rel("X = Y"), rel("X + 1 = Y + s(x)"), rel("Z <= 1"), rel("Z*s(x) > 1"))
        pt = {"X": Fraction(1), "Y": Fraction(1), "x": Fraction(1), "x_s1": Fraction(1), "Z": Fraction(1)}
        assert eval_formula(f, pt) is False

    def test_unbound(self):
        with pytest.raises(UnboundVariable):
            eval_formula(rel("x > y"), {"x": Fraction(1)})


class TestConstructors:
    def test_flatten_sort_dedupe(self):
        a, b, c = rel("x > 0"), rel("y > 0"), rel("z > 0")
        f = conj(c, conj(b, a), a)
        assert isinstance(f, And) and f.args == conj(a, b, c).args and len(f.args) == 3

    def test_units(self):
        a = rel("x > 0")
        assert conj() == TRUE and disj() == FALSE
        assert conj(a, TRUE) == a and conj(a, FALSE) == FALSE
        assert disj(a, TRUE) == TRUE and disj(a) == a

    def test_children_nonempty(self):
        f = disj(rel("x > 0"), rel("x < -1"))
        assert isinstance(f, Or) and f.args

    def test_variables(self):
        assert variables(conj(rel("x > y"), rel("Z*s(x) = 0"))) == {"x", "y", "Z", "x_s1"}
        assert isinstance(rel("x > y"), Atom)
