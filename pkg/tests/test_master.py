"""Divide-and-conquer recurrences: closed forms, ceiling division, bounds."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dominance_lab.master import (
    MasterParams,
    NonTerminating,
    PointNotInDomain,
    ceil_div_count,
    ceil_div_fixed_points,
    ceil_div_iterate,
    ceiling_division,
    eval_master,
    master_theta_class,
    verify_master_bounds,
)

F = Fraction


def params(a, b, c, d=1):
    return MasterParams(F(a), F(b), F(c), F(d))


class TestEvaluation:
    def test_mergesortlike_value(self):
        # T(n) = 2 T(n/2) + n, T(1) = 1: T(8) = 8 + 8*log2(8) = 32
        p = params(2, 2, 1)
        assert eval_master("powers", p, 8, method="recursive") == 32
        assert eval_master("powers", p, 8, method="closed") == 32

    @pytest.mark.parametrize("a,c", [(1, 0), (2, 1), (4, 2), (3, 1)])
    def test_recursive_equals_closed_on_powers(self, a, c):
        p = params(a, 2, c)
        for i in range(0, 10):
            n = 2 ** i
            assert (eval_master("powers", p, n, method="recursive")
                    == eval_master("powers", p, n, method="closed"))

    def test_powers_domain_enforced(self):
        with pytest.raises(PointNotInDomain):
            eval_master("powers", params(2, 2, 1), 6)

    def test_reals_fractional_point(self):
        p = params(2, 2, 1)
        r = eval_master("reals", p, F(7, 2), method="recursive")
        assert r == eval_master("reals", p, F(7, 2), method="closed")

    def test_integers_ceiling_recursion(self):
        p = params(2, 2, 1)
        for n in range(1, 200):
            assert (eval_master("integers", p, n, method="recursive")
                    == eval_master("integers", p, n, method="closed"))

    def test_integers_accept_rational_base_at_least_two(self):
        p = params(2, F(5, 2), 1)
        assert (eval_master("integers", p, 100, method="recursive")
                == eval_master("integers", p, 100, method="closed"))

    def test_integers_reject_base_below_two(self):
        with pytest.raises(ValueError):
            eval_master("integers", params(2, F(3, 2), 1), 8)


class TestCeilingDivision:
    def test_iterate_matches_math_ceil(self):
        assert ceil_div_iterate(F(2), 9, 1) == 5
        assert ceil_div_iterate(F(2), 9, 2) == 3

    def test_count_example(self):
        # 8 -> 4 -> 2 -> 1: three steps to drop below b = 2
        assert ceil_div_count(F(2), 8) == 3

    def test_fixed_points(self):
        assert ceil_div_fixed_points(F(3, 2)) == (1, 2)
        assert ceil_div_fixed_points(F(2)) == (1,)
        assert ceil_div_fixed_points(F(3)) == (1,)

    def test_pitfall_iterated_vs_squared_divisor(self):
        # dividing twice by 5/2 is not dividing once by 25/4
        b = F(5, 2)
        twice = ceil_div_iterate(b, 6, 2)
        once_by_square = -((-6 * (b * b).denominator) // (b * b).numerator)
        assert twice == 2
        assert once_by_square == 1
        assert twice != once_by_square

    def test_nonterminating_below_threshold(self):
        with pytest.raises(NonTerminating):
            ceil_div_count(F(3, 2), 2)

    def test_dispatcher(self):
        assert ceiling_division(F(2), "iterate", n=9, i=1) == 5
        assert ceiling_division(F(2), "count", n=8) == 3
        assert ceiling_division(F(2), "fixed_points") == (1,)

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(1, 10 ** 6), p=st.integers(3, 9),
           q=st.integers(1, 2))
    def test_single_step_is_true_ceiling(self, n, p, q):
        b = F(p, q)
        if b <= 1:
            return
        assert ceil_div_iterate(b, n, 1) == math.ceil(n / b)

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(2, 10 ** 4))
    def test_count_terminates_and_lands_below_base(self, n):
        b = F(2)
        m = ceil_div_count(b, n)
        assert ceil_div_iterate(b, n, m) < b
        if m > 0:
            assert ceil_div_iterate(b, n, m - 1) >= b


class TestBoundVerification:
    @pytest.mark.parametrize("b", [F(2), F(5, 2), F(3)])
    def test_no_violations_up_to_10000(self, b):
        report = verify_master_bounds(b, 10_000)
        assert not report.violations
        assert report.checked > 0


class TestThetaClassification:
    @pytest.mark.parametrize("a,c,label", [
        (4, 1, "n^log_b(a)"),
        (2, 1, "n^c*log_b(n)"),
        (1, 1, "n^c"),
    ])
    def test_class_by_exponent_comparison(self, a, c, label):
        report = master_theta_class("powers", params(a, 2, c),
                                    horizon_exp=8)
        assert report.class_label == label
        assert 0 < report.c1 <= report.c2
        assert report.stability < 0.05

    def test_integers_variant_classifies_too(self):
        report = master_theta_class("integers", params(2, 2, 1),
                                    horizon_exp=8)
        assert report.class_label == "n^c*log_b(n)"
