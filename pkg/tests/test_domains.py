import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stlmon import (
    Cmp,
    RobustnessInterval,
    ThreeValued,
    Verdict,
    atom_robustness,
    atom_truth,
    interval_max,
    interval_min,
    interval_negate,
    kleene_and,
    kleene_implies,
    kleene_not,
    kleene_op,
    kleene_or,
    point_interval,
    sign_abstraction,
)
from stlmon.domains import format_number

INF = math.inf

T, F, U = ThreeValued.TRUE, ThreeValued.FALSE, ThreeValued.UNKNOWN


class TestAtomRobustness:
    def test_lt_margin(self):
        # temp < MAX_TEMP with temp=125.5, MAX_TEMP=120 -> -5.5
        assert atom_robustness(Cmp.LT, 125.5, 120.0) == -5.5

    def test_gt_margin(self):
        assert atom_robustness(Cmp.GT, 15.0, 10.0) == 5.0

    def test_eq_at_point(self):
        assert atom_robustness(Cmp.EQ, 1.0, 1.0) == 0.0

    def test_eq_away_from_point(self):
        assert atom_robustness(Cmp.EQ, 3.0, 1.0) == -2.0
        assert atom_robustness(Cmp.NE, 3.0, 1.0) == 2.0

    @given(
        st.sampled_from(list(Cmp)),
        st.floats(-1e6, 1e6),
        st.floats(-1e6, 1e6),
    )
    def test_sign_coherence(self, cmp, v, c):
        rho = atom_robustness(cmp, v, c)
        truth = atom_truth(cmp, v, c)
        if rho > 0:
            assert truth
        elif rho < 0:
            assert not truth

    def test_strict_vs_nonstrict_share_margin(self):
        assert atom_robustness(Cmp.LT, 2.0, 2.0) == atom_robustness(Cmp.LE, 2.0, 2.0)
        assert atom_truth(Cmp.LE, 2.0, 2.0) and not atom_truth(Cmp.LT, 2.0, 2.0)


class TestIntervals:
    def test_negate_half_infinite(self):
        assert interval_negate(RobustnessInterval(-INF, -5.5)) == RobustnessInterval(5.5, INF)

    def test_negate_point_and_mixed(self):
        assert interval_negate(RobustnessInterval(0, 0)) == RobustnessInterval(0, 0)
        assert interval_negate(RobustnessInterval(-1, 2)) == RobustnessInterval(-2, 1)

    def test_min_conjunction_of_enclosures(self):
        got = interval_min([RobustnessInterval(-INF, -5.5), RobustnessInterval(0, INF)])
        assert got == RobustnessInterval(-INF, -5.5)

    def test_max_implication_case(self):
        got = interval_max([RobustnessInterval(-5, -5), RobustnessInterval(0, INF)])
        assert got == RobustnessInterval(0, INF)

    def test_singleton(self):
        assert interval_min([RobustnessInterval(2, 2)]) == RobustnessInterval(2, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            interval_min([])

    def test_invalid_interval_rejected(self):
        with pytest.raises(ValueError):
            RobustnessInterval(1.0, 0.0)
        with pytest.raises(ValueError):
            RobustnessInterval(math.nan, 0.0)


finite_intervals = st.builds(
    lambda a, b: RobustnessInterval(min(a, b), max(a, b)),
    st.floats(-100, 100) | st.just(-INF),
    st.floats(-100, 100) | st.just(INF),
)


class TestIntervalAlgebra:
    @given(st.lists(finite_intervals, min_size=1, max_size=5))
    def test_min_max_idempotent_commutative(self, xs):
        assert interval_min(xs) == interval_min(list(reversed(xs)))
        assert interval_max(xs) == interval_max(xs + xs)

    @given(finite_intervals, finite_intervals, finite_intervals)
    def test_min_associative(self, a, b, c):
        assert interval_min([interval_min([a, b]), c]) == interval_min([a, interval_min([b, c])])

    @given(finite_intervals)
    def test_negate_involution(self, x):
        assert interval_negate(interval_negate(x)) == x

    @given(st.lists(finite_intervals, min_size=1, max_size=5))
    def test_de_morgan(self, xs):
        lhs = interval_negate(interval_min(xs))
        rhs = interval_max([interval_negate(x) for x in xs])
        assert lhs == rhs


class TestKleene:
    def test_false_dominates_and(self):
        assert kleene_and(F, U) is F

    def test_unknown_or(self):
        assert kleene_or(U, U) is U

    def test_implies_false_antecedent(self):
        assert kleene_implies(F, U) is T

    def test_not_unknown(self):
        assert kleene_not(U) is U

    def test_dispatcher(self):
        assert kleene_op("and", T, T) is T
        assert kleene_op("or", F, F) is F
        assert kleene_op("not", T) is F
        assert kleene_op("implies", T, U) is U
        with pytest.raises(ValueError):
            kleene_op("xor", T, F)

    @given(st.sampled_from([T, F]), st.sampled_from([T, F]))
    def test_restriction_to_booleans(self, a, b):
        assert (kleene_and(a, b) is T) == ((a is T) and (b is T))
        assert (kleene_or(a, b) is T) == ((a is T) or (b is T))
        assert (kleene_implies(a, b) is T) == ((a is not T) or (b is T))

    @given(st.sampled_from([T, F, U]), st.sampled_from([T, F, U]))
    def test_de_morgan_three_valued(self, a, b):
        assert kleene_not(kleene_and(a, b)) is kleene_or(kleene_not(a), kleene_not(b))


class TestSignAbstraction:
    def test_positive(self):
        assert sign_abstraction(RobustnessInterval(0.5, 2.0)) is T

    def test_negative(self):
        assert sign_abstraction(RobustnessInterval(-INF, -5.5)) is F

    def test_straddling(self):
        assert sign_abstraction(RobustnessInterval(-1.0, 1.0)) is U


class TestDisplay:
    def test_interval_display(self):
        assert str(RobustnessInterval(-INF, -5.5)) == "RobustnessInterval(-inf, -5.5)"

    def test_verdict_displays(self):
        assert str(Verdict.boolean(True)) == "Boolean(true)"
        assert str(Verdict.boolean(False)) == "Boolean(false)"
        assert str(Verdict.robustness(1.0)) == "Robustness(1)"
        assert str(Verdict.robustness(-0.25)) == "Robustness(-0.25)"
        assert str(Verdict.three_valued(U)) == "ThreeValued(Unknown)"
        assert str(Verdict.rosi(point_interval(0.0))) == "RobustnessInterval(0, 0)"

    def test_number_formatting(self):
        assert format_number(0.0) == "0"
        assert format_number(-INF) == "-inf"
        assert format_number(INF) == "inf"
        assert format_number(1000.0) == "1000"
        assert format_number(0.5) == "0.5"
