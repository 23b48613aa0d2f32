"""Expression parsing, exact evaluation, domains, and grid sampling."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dominance_lab.functions import (
    Add,
    ComposeRight,
    Const,
    Coord,
    DomainMismatchError,
    FiniteSet,
    Grid,
    INTEGERS,
    Max,
    Mul,
    NATURALS,
    NegativeValueError,
    ParseError,
    Pow,
    ResourceFunction,
    Restrict,
    Scale,
    from_text,
    make_function,
    parse_domain,
    sample,
    same_domain,
    transform,
)


class TestParsing:
    def test_polynomial_round_trip(self):
        f = from_text("N", "n * n + 3 * n + 1")
        assert f.value_at((0,)) == 1
        assert f.value_at((5,)) == 41
        assert isinstance(f.value_at((5,)), Fraction)

    def test_two_dimensional(self):
        f = from_text("N^2", "m * n + n")
        assert f.value_at((3, 4)) == 16

    def test_rational_coefficients(self):
        f = from_text("N", "1/2 * n * (n + 1)")
        assert f.value_at((8,)) == 36

    def test_exponential(self):
        f = from_text("N", "exp(2, n)")
        assert f.value_at((10,)) == 1024

    def test_indicator_and_max(self):
        f = from_text("N", "(n max 1) + 7 * ind(n = 0)")
        assert f.value_at((0,)) == 8
        assert f.value_at((3,)) == 3

    def test_integer_domain_allows_negatives(self):
        f = from_text("Z", "n * n")
        assert f.value_at((-4,)) == 16
        assert f.value_at((4,)) == 16

    def test_parse_error(self):
        with pytest.raises(ParseError):
            from_text("N", "n +")

    def test_unknown_domain(self):
        with pytest.raises(ParseError):
            parse_domain("Q^2")

    def test_wrong_dimension_coordinate(self):
        with pytest.raises(ParseError):
            from_text("N", "m * n")

    def test_negative_value_rejected_at_construction(self):
        # the identity goes negative on Z; construction probes a small box
        with pytest.raises(NegativeValueError):
            from_text("Z", "n")


class TestDomains:
    def test_same_domain(self):
        f = from_text("N", "n")
        g = from_text("N", "n + 1")
        h = from_text("N^2", "m + n")
        assert same_domain(f.domain, g.domain)
        assert not same_domain(f.domain, h.domain)

    def test_finite_table_rejects_outside_points(self):
        dom = FiniteSet(((1,), (2,), (5,)))
        f = ResourceFunction(dom, {(1,): Fraction(1), (2,): Fraction(2),
                                   (5,): Fraction(5)}, None)
        assert f.value_at((5,)) == 5
        with pytest.raises(DomainMismatchError):
            f.value_at((3,))

    def test_restrict_narrows_domain(self):
        f = from_text("N", "n + 1")
        sub = FiniteSet(((0,), (3,)))
        g = transform(f, Restrict(sub))
        assert g.domain == sub
        assert g.value_at((3,)) == 4


class TestGridSampling:
    """Axis samples are dense near the origin and geometrically thinned
    beyond, and doubling the box only ever adds points."""

    def test_dense_up_to_128(self):
        axis = Grid(1, NATURALS)._axis_range(128)
        assert list(axis) == list(range(0, 129))

    @pytest.mark.parametrize("h", [128, 256, 512, 1024])
    def test_nesting_under_doubling(self, h):
        small = set(Grid(1, NATURALS)._axis_range(h))
        large = set(Grid(1, NATURALS)._axis_range(2 * h))
        assert small <= large

    def test_signed_axis_symmetric(self):
        axis = list(Grid(1, INTEGERS)._axis_range(256))
        assert set(axis) == {-v for v in axis}

    def test_box_512_point_count(self):
        # 129 dense points, 32 at stride 4 in (128, 256], 32 at stride 8
        # in (256, 512].
        axis = list(Grid(1, NATURALS)._axis_range(512))
        assert len(axis) == 193

    def test_strides_are_powers_of_two(self):
        axis = Grid(1, NATURALS)._axis_range(2048)
        for v in axis:
            if 128 < v <= 256:
                assert v % 4 == 0
            elif 256 < v <= 512:
                assert v % 8 == 0
            elif 512 < v <= 1024:
                assert v % 16 == 0


class TestTransforms:
    def test_compose_right(self):
        f = from_text("N", "n * n")
        shift = ComposeRight(Grid(1, NATURALS),
                             (Add((Coord(1), Const(Fraction(1)))),))
        g = transform(f, shift)
        assert g.value_at((3,)) == 16

    def test_sample_deterministic(self):
        f = from_text("N", "2 * n + 1")
        assert sample(f, 16) == sample(f, 16)


class TestExpressionAlgebra:
    @given(a=st.integers(0, 20), b=st.integers(0, 20), n=st.integers(0, 50))
    def test_add_mul_agree_with_arithmetic(self, a, b, n):
        expr = Add((Mul((Const(Fraction(a)), Coord(1))), Const(Fraction(b))))
        f = make_function(Grid(1, NATURALS), expr)
        assert f.value_at((n,)) == a * n + b

    @given(n=st.integers(0, 30))
    def test_pow_matches_repeated_multiplication(self, n):
        f = make_function(Grid(1, NATURALS), Pow(Coord(1), Fraction(3)))
        assert f.value_at((n,)) == n ** 3

    @given(a=st.integers(1, 9), n=st.integers(0, 40))
    def test_max_and_scale(self, a, n):
        expr = Max((Scale(Fraction(a), Coord(1)), Const(Fraction(7))))
        f = make_function(Grid(1, NATURALS), expr)
        assert f.value_at((n,)) == max(a * n, 7)
