"""Decision procedure for the six dominance kinds."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dominance_lab.dominance import (
    KINDS,
    compare,
    decide,
    decide_finite,
    minimal_constant,
    replay_witness,
)
from dominance_lab.functions import FiniteSet, ResourceFunction, from_text

NONTRIVIAL = tuple(k for k in KINDS if k != "trivial")


def _table(values):
    pts = tuple((k,) for k in sorted(values))
    return ResourceFunction(FiniteSet(pts),
                            {(k,): Fraction(v) for k, v in values.items()},
                            None)


class TestBasicVerdicts:
    @pytest.mark.parametrize("kind", KINDS)
    def test_scaled_copy_is_dominated(self, kind):
        g = from_text("N", "2 * n")
        f = from_text("N", "n")
        v = decide(kind, g, f)
        assert v.status == "holds"

    @pytest.mark.parametrize("kind", KINDS)
    def test_reflexive(self, kind):
        f = from_text("N", "n * n + 1")
        assert decide(kind, f, f).status == "holds"

    def test_trivial_holds_even_for_escapes(self):
        g = from_text("N", "exp(2, n)")
        f = from_text("N", "1")
        assert decide("trivial", g, f).status == "holds"

    @pytest.mark.parametrize("kind", NONTRIVIAL)
    def test_unbounded_vs_constant_fails(self, kind):
        g = from_text("N", "n")
        f = from_text("N", "1")
        assert decide(kind, g, f).status == "fails"

    def test_linear_zero_gap_is_exact(self):
        # f vanishes at 0 where g is positive: no finite constant works
        g = from_text("N", "n max 1")
        f = from_text("N", "n")
        v = decide("linear", g, f)
        assert v.status == "fails"
        assert v.exact
        assert v.certificate.reason == "zero-gap"

    def test_cofinite_tolerates_single_gap(self):
        g = from_text("N", "n max 1")
        f = from_text("N", "n")
        v = decide("cofinite", g, f)
        assert v.status == "holds"
        assert v.witness.kind == "cofinite"
        assert (0,) in v.witness.region

    def test_affine_absorbs_translation(self):
        # at n = 0 the reference vanishes while g = 5: no linear constant
        # works, but the affine slack does
        g = from_text("N", "n + 5")
        f = from_text("N", "n")
        assert decide("affine", g, f).status == "holds"
        assert decide("linear", g, f).status == "fails"


class TestAsymptoticKinds:
    def test_asymptotic_ignores_initial_segment(self):
        g = from_text("N", "n + 100 * ind(n = 3)")
        f = from_text("N", "n max 1")
        assert decide("asymptotic", g, f).status == "holds"

    def test_coasymptotic_on_plane(self):
        g = from_text("N^2", "m * n + n")
        f = from_text("N^2", "m * n")
        # fails coasymptotically: the strip m = 0 escapes every constant
        assert decide("coasymptotic", g, f).status == "fails"
        assert decide("asymptotic", g, f).status == "holds"


class TestWitnessesAndReplay:
    @pytest.mark.parametrize("kind", NONTRIVIAL)
    def test_holds_carries_replayable_witness(self, kind):
        g = from_text("N", "3 * n + 2")
        f = from_text("N", "n + 1")
        v = decide(kind, g, f)
        assert v.status == "holds"
        assert replay_witness(kind, g, f, v.witness, 128)

    def test_fails_carries_certificate_points(self):
        g = from_text("N", "n * n")
        f = from_text("N", "n")
        v = decide("linear", g, f)
        assert v.status == "fails"
        assert v.certificate is not None
        assert len(v.certificate.points) >= 1


class TestMinimalConstant:
    def test_exact_ratio(self):
        g = from_text("N", "3 * n")
        f = from_text("N", "n")
        assert minimal_constant("linear", g, f, 64) == 3

    def test_none_on_zero_gap(self):
        g = from_text("N", "1")
        f = from_text("N", "n")
        assert minimal_constant("linear", g, f, 64) is None

    def test_growth_detects_escape(self):
        g = from_text("N", "n * n")
        f = from_text("N", "n max 1")
        c32 = minimal_constant("linear", g, f, 32)
        c64 = minimal_constant("linear", g, f, 64)
        assert c64 >= 2 * c32


class TestCompare:
    def test_equivalent(self):
        g = from_text("N", "2 * n")
        f = from_text("N", "n")
        assert compare("linear", g, f).relation == "equivalent"

    def test_strict(self):
        g = from_text("N", "n")
        f = from_text("N", "n * n + 1")
        c = compare("linear", g, f)
        assert c.forward.status == "holds"
        assert c.backward.status == "fails"


class TestFiniteDomains:
    def test_decide_finite_exact(self):
        g = _table({1: 5, 2: 6, 3: 7})
        f = _table({1: 1, 2: 2, 3: 3})
        v = decide_finite("linear", g, f)
        assert v.status == "holds"
        assert v.exact
        assert v.witness.constant == 5

    def test_decide_finite_zero_gap(self):
        g = _table({1: 1, 2: 0})
        f = _table({1: 0, 2: 1})
        assert decide_finite("linear", g, f).status == "fails"


class TestDeterminism:
    @pytest.mark.parametrize("kind", KINDS)
    def test_repeated_calls_identical(self, kind):
        g = from_text("N", "n * n + 4")
        f = from_text("N", "n * n max 1")
        assert decide(kind, g, f) == decide(kind, g, f)


class TestLinearLaw:
    """g <= c * f pointwise is exactly what the linear kind certifies."""

    @settings(max_examples=40, deadline=None)
    @given(a=st.integers(1, 12), b=st.integers(0, 12))
    def test_linear_combination_is_member(self, a, b):
        g = from_text("N", f"{a} * n + {b}")
        f = from_text("N", "n + 1")
        v = decide("linear", g, f)
        assert v.status == "holds"
        c = v.witness.constant
        for n in range(0, 100):
            assert a * n + b <= c * (n + 1)

    @settings(max_examples=20, deadline=None)
    @given(a=st.integers(1, 6))
    def test_strictly_faster_growth_escapes(self, a):
        g = from_text("N", f"{a} * n * n")
        f = from_text("N", "n max 1")
        assert decide("linear", g, f).status == "fails"
