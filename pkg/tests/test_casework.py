"""Worst/best/average case analysis over grouped inputs."""

import itertools
from fractions import Fraction

import pytest

from dominance_lab.casework import (
    Grouping,
    ZeroMassFiber,
    average_case,
    case_extremes,
    case_report,
    insertion_sort_comparisons,
    permutation_grouping,
)
from dominance_lab.functions import (
    DomainMismatchError,
    FiniteSet,
    ResourceFunction,
)

F = Fraction


def _table(values):
    pts = tuple(sorted(values))
    return ResourceFunction(FiniteSet(pts),
                            {p: F(v) for p, v in values.items()}, None)


@pytest.fixture
def parity_setup():
    """Cost n over 0..7, grouped by parity."""
    f = _table({(n,): n for n in range(8)})
    grouping = Grouping(FiniteSet(tuple((n,) for n in range(8))),
                        FiniteSet(((0,), (1,))),
                        {(n,): (n % 2,) for n in range(8)})
    return f, grouping


class TestExtremes:
    def test_worst_and_best_values(self, parity_setup):
        f, grouping = parity_setup
        worst, w_wit = case_extremes(f, grouping, "worst")
        best, b_wit = case_extremes(f, grouping, "best")
        assert worst.value_at((0,)) == 6 and worst.value_at((1,)) == 7
        assert best.value_at((0,)) == 0 and best.value_at((1,)) == 1
        assert w_wit[(1,)] == (7,)
        assert b_wit[(0,)] == (0,)

    def test_witness_attains_extreme(self, parity_setup):
        f, grouping = parity_setup
        worst, witnesses = case_extremes(f, grouping, "worst")
        for z, x in witnesses.items():
            assert f.value_at(x) == worst.value_at(z)
            assert grouping.classify[x] == z


class TestAverage:
    def test_uniform_average(self, parity_setup):
        f, grouping = parity_setup
        avg = average_case(f, grouping)
        assert avg.value_at((0,)) == F(0 + 2 + 4 + 6, 4)
        assert avg.value_at((1,)) == F(1 + 3 + 5 + 7, 4)

    def test_weighted_average(self, parity_setup):
        f, grouping = parity_setup
        weights = {(n,): F(1) if n < 2 else F(0) for n in range(8)}
        avg = average_case(f, grouping, weights)
        assert avg.value_at((0,)) == 0
        assert avg.value_at((1,)) == 1

    def test_zero_mass_fiber_rejected(self, parity_setup):
        f, grouping = parity_setup
        weights = {(n,): F(0) if n % 2 else F(1) for n in range(8)}
        with pytest.raises(ZeroMassFiber):
            average_case(f, grouping, weights)

    def test_report_ordering(self, parity_setup):
        f, grouping = parity_setup
        report = case_report(f, grouping)
        for z, row in report.items():
            assert row["best"] <= row["average"] <= row["worst"]


class TestGroupingValidation:
    def test_surjectivity_required(self):
        with pytest.raises(ValueError):
            Grouping(FiniteSet(((0,),)), FiniteSet(((0,), (1,))),
                     {(0,): (0,)})

    def test_totality_required(self):
        with pytest.raises(DomainMismatchError):
            Grouping(FiniteSet(((0,), (3,))), FiniteSet(((0,),)),
                     {(0,): (0,)})


class TestInsertionSort:
    def test_sorted_input_is_best(self):
        assert insertion_sort_comparisons((1, 2, 3, 4)) == 3

    def test_reversed_input_is_worst(self):
        assert insertion_sort_comparisons((4, 3, 2, 1)) == 6

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_brute_force_extremes(self, n):
        counts = [insertion_sort_comparisons(p)
                  for p in itertools.permutations(range(1, n + 1))]
        assert max(counts) == n * (n - 1) // 2
        if n >= 2:
            assert min(counts) == n - 1

    def test_permutation_grouping_matches_brute_force(self):
        grouping, cost = permutation_grouping(4)
        report = case_report(cost, grouping)
        for z, row in report.items():
            n = z[0]
            assert row["worst"] == n * (n - 1) // 2
            if n >= 2:
                assert row["best"] == n - 1
            assert row["best"] <= row["average"] <= row["worst"]
