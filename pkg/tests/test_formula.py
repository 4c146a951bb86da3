import pytest
from hypothesis import given
from hypothesis import strategies as st

from stlmon import (
    And,
    Atom,
    Cmp,
    Eventually,
    Formula,
    FormulaSyntaxError,
    Globally,
    Implies,
    IntervalError,
    Not,
    Or,
    TrueLiteral,
    Until,
    Var,
    format_formula,
    free_variables,
    parse_formula,
    signal_names,
    temporal_depth,
)


class TestParsing:
    def test_parameterized_always(self):
        f = parse_formula("G[0, 5] (temp < $MAX_TEMP)")
        assert f == Globally(0, 5, Atom("temp", Cmp.LT, Var("MAX_TEMP")))

    def test_implication_with_eventually(self):
        f = parse_formula("pressure > 10.0 -> F[0, 2] valve_open == 1.0")
        assert f == Implies(
            Atom("pressure", Cmp.GT, 10.0),
            Eventually(0, 2, Atom("valve_open", Cmp.EQ, 1.0)),
        )

    def test_true_literal(self):
        assert parse_formula("true") == TrueLiteral()

    def test_interval_error(self):
        with pytest.raises(IntervalError):
            parse_formula("G[5, 2] (x > 0)")

    def test_environment_substitution(self):
        phi1 = parse_formula("G[0, 5] (temp < $MAX_TEMP)")
        phi2 = parse_formula("pressure > 10.0 -> F[0, 2] valve_open == 1.0")
        f = parse_formula("phi1 and phi2", env={"phi1": phi1, "phi2": phi2})
        assert f == And(phi1, phi2)

    def test_unknown_bare_identifier(self):
        with pytest.raises(FormulaSyntaxError, match="unknown name"):
            parse_formula("phi1 and x > 0")

    def test_env_name_signal_collision(self):
        phi1 = parse_formula("x > 0")
        with pytest.raises(FormulaSyntaxError, match="both"):
            parse_formula("phi1 and phi1 < 5", env={"phi1": phi1})

    def test_negative_threshold(self):
        assert parse_formula("x > -0.5") == Atom("x", Cmp.GT, -0.5)

    def test_until_binary(self):
        f = parse_formula("(x < 0.5) U[0, 1000] (x < 0)")
        assert f == Until(0, 1000, Atom("x", Cmp.LT, 0.5), Atom("x", Cmp.LT, 0.0))

    def test_syntax_error_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("G[0,")
        assert info.value.line == 1
        assert info.value.column >= 4

    def test_error_mentions_expectation(self):
        with pytest.raises(FormulaSyntaxError, match="expected"):
            parse_formula("x >")


class TestSpellings:
    def test_symbol_and_word_forms_agree(self):
        pairs = [
            ("G[0, 5] (x > 0)", "globally[0, 5] (x > 0)"),
            ("F[0, 5] (x > 0)", "eventually[0, 5] (x > 0)"),
            ("(x > 0) U[0, 5] (x < 0)", "(x > 0) until[0, 5] (x < 0)"),
            ("x > 0 && y > 0", "x > 0 and y > 0"),
            ("x > 0 || y > 0", "x > 0 or y > 0"),
            ("!(x > 0)", "not (x > 0)"),
            ("x > 0 -> y > 0", "x > 0 implies y > 0"),
        ]
        for lhs, rhs in pairs:
            assert parse_formula(lhs) == parse_formula(rhs), (lhs, rhs)


class TestPrecedence:
    def test_implies_loosest(self):
        f = parse_formula("a > 0 -> b > 0 and c > 0")
        assert isinstance(f, Implies)
        assert isinstance(f.right, And)

    def test_not_binds_tighter_than_and(self):
        f = parse_formula("not a > 0 and b > 0")
        assert isinstance(f, And)
        assert isinstance(f.left, Not)

    def test_or_looser_than_and(self):
        f = parse_formula("a > 0 || b > 0 && c > 0")
        assert isinstance(f, Or)
        assert isinstance(f.right, And)

    def test_implies_right_associative(self):
        f = parse_formula("a > 0 -> b > 0 -> c > 0")
        assert isinstance(f, Implies)
        assert isinstance(f.right, Implies)

    def test_until_tighter_than_temporal_prefix(self):
        f = parse_formula("G[0, 5] (p > 0) U[0, 2] (q > 0)")
        assert isinstance(f, Globally)
        assert isinstance(f.child, Until)

    def test_until_left_associative(self):
        f = parse_formula("(a > 0) U[0, 1] (b > 0) U[0, 2] (c > 0)")
        assert isinstance(f, Until)
        assert isinstance(f.left, Until)


class TestTemporalDepth:
    def test_atom(self):
        assert temporal_depth(Atom("x", Cmp.GT, 0.0)) == 0

    def test_single_operator(self):
        assert temporal_depth(parse_formula("G[0, 5] (x > 0)")) == 5

    def test_phi2_nested(self):
        f = parse_formula("G[0, 1000] (x > 0.5 -> F[0, 100] (x < 0))")
        assert temporal_depth(f) == 1100

    def test_until_takes_max_of_children(self):
        f = parse_formula("(G[0, 3] (x > 0)) U[0, 10] (F[0, 7] (x < 0))")
        assert temporal_depth(f) == 17

    def test_monotone_in_children(self):
        inner = parse_formula("F[0, 7] (x < 0)")
        outer = Globally(0, 5, inner)
        assert temporal_depth(outer) >= temporal_depth(inner)


class TestFreeVariables:
    def test_single(self):
        f = parse_formula("G[0, 5] (temp < $MAX_TEMP)")
        assert free_variables(f) == {"MAX_TEMP"}

    def test_none(self):
        assert free_variables(parse_formula("x > 0.5")) == set()

    def test_union(self):
        f = And(
            parse_formula("G[0, 5] (temp < $MAX_TEMP)"), parse_formula("x > 0.5")
        )
        assert free_variables(f) == {"MAX_TEMP"}

    def test_signal_names(self):
        f = parse_formula("pressure > 10.0 -> F[0, 2] valve_open == 1.0")
        assert signal_names(f) == {"pressure", "valve_open"}


class TestFormatting:
    def test_canonical_globally(self):
        f = Globally(0, 5, Atom("temp", Cmp.LT, Var("MAX_TEMP")))
        assert format_formula(f) == "G[0, 5] (temp < $MAX_TEMP)"

    def test_canonical_true(self):
        assert format_formula(TrueLiteral()) == "true"

    def test_canonical_until(self):
        f = Until(0, 1000, Atom("x", Cmp.LT, 0.5), Atom("x", Cmp.LT, 0.0))
        text = format_formula(f)
        assert text == "(x < 0.5) U[0, 1000] (x < 0)"
        assert parse_formula(text) == f


def formulas(depth=3):
    atoms = st.builds(
        Atom,
        st.sampled_from(["x", "y", "temp"]),
        st.sampled_from(list(Cmp)),
        st.one_of(
            st.floats(-100, 100).map(lambda v: round(v, 3)),
            st.sampled_from([Var("A"), Var("B")]),
        ),
    )
    base = st.one_of(atoms, st.just(TrueLiteral()))
    bounds = st.tuples(st.integers(0, 40), st.integers(0, 40)).map(
        lambda ab: (min(ab) / 4.0, max(ab) / 4.0)
    )

    def extend(children):
        return st.one_of(
            st.builds(Not, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(lambda ab, c: Globally(ab[0], ab[1], c), bounds, children),
            st.builds(lambda ab, c: Eventually(ab[0], ab[1], c), bounds, children),
            st.builds(lambda ab, l, r: Until(ab[0], ab[1], l, r), bounds, children, children),
        )

    return st.recursive(base, extend, max_leaves=depth * 4)


class TestRoundTrip:
    @given(formulas())
    def test_parse_format_inverse(self, f):
        assert parse_formula(format_formula(f)) == f

    @given(formulas())
    def test_depth_nonnegative(self, f):
        assert temporal_depth(f) >= 0


class TestConstructionInvariants:
    def test_direct_interval_violation(self):
        with pytest.raises(IntervalError):
            Globally(3.0, 1.0, TrueLiteral())
        with pytest.raises(IntervalError):
            Until(-1.0, 1.0, TrueLiteral(), TrueLiteral())
        with pytest.raises(IntervalError):
            Eventually(0.0, float("inf"), TrueLiteral())

    def test_empty_signal_rejected(self):
        from stlmon import InvalidFormulaError

        with pytest.raises(InvalidFormulaError):
            Atom("", Cmp.LT, 0.0)

    def test_nan_threshold_rejected(self):
        from stlmon import InvalidFormulaError

        with pytest.raises(InvalidFormulaError):
            Atom("x", Cmp.LT, float("nan"))
