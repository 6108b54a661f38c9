"""
Unit tests for the surgery formula.

This module contains tests for lens space correction terms, the knot
correction, Spin^c labels and Moser's classification of torus knot surgeries.
"""

from fractions import Fraction

import pytest

from hf_surgery.errors import InvalidInputError, MethodInapplicableError
from hf_surgery.knots import get_polynomial, torus_alex
from hf_surgery.lattice import d_invariants
from hf_surgery.plumbing import to_plumbing
from hf_surgery.seifert import SeifertData, same_manifold
from hf_surgery.surgery import (
    ConnectedSum,
    LensSpace,
    MultiplicitiesOnly,
    Seifert,
    Slope,
    d_lens,
    d_surgery,
    knot_correction,
    label_multiplicity,
    lens_d_multiset,
    moser_classify,
    parse_slope,
    self_conjugate_index,
    spinc_label,
)

F = Fraction


class TestSlope:
    """Test cases for slopes."""

    def test_parse(self):
        assert parse_slope("7/2") == Slope(7, 2)
        assert parse_slope(" 8 ") == Slope(8, 1)
        assert str(Slope(16, 3)) == "16/3"

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            Slope(4, 2)
        with pytest.raises(InvalidInputError):
            Slope(0, 1)
        with pytest.raises(InvalidInputError):
            parse_slope("-3")


class TestLensSpaces:
    """Test cases for d(L(p, q), i)."""

    def test_known_values(self):
        assert d_lens(3, 1, 0) == F(1, 2)
        assert d_lens(3, 1, 1) == F(-1, 6)
        assert d_lens(3, 1, 2) == F(-1, 6)
        assert d_lens(2, 1, 0) == F(1, 4)
        assert d_lens(2, 1, 1) == F(-1, 4)
        assert d_lens(4, 1, 2) == F(-1, 4)

    def test_three_sphere(self):
        assert d_lens(1, 0, 0) == 0
        assert lens_d_multiset(1, 0) == (F(0),)

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError):
            d_lens(4, 2, 0)
        with pytest.raises(InvalidInputError):
            d_lens(3, 4, 0)
        with pytest.raises(InvalidInputError):
            d_lens(3, 1, 4)

    def test_multiset_sums_symmetric(self):
        """Test that L(5, 2) values come in conjugate pairs."""
        values = [d_lens(5, 2, i) for i in range(5)]
        assert sorted(values) == list(lens_d_multiset(5, 2))
        centre = self_conjugate_index(5, 2)
        for i in range(5):
            j = (2 * centre - i) % 5
            assert values[i] == values[j]


class TestKnotCorrection:
    """Test cases for -2 V_c."""

    def test_values(self):
        assert knot_correction(get_polynomial("1"), 0) == -2
        assert knot_correction(get_polynomial("2'"), 0) == -4
        assert knot_correction(get_polynomial("1"), 1) == 0
        assert knot_correction(get_polynomial("2"), 5) == 0

    def test_negative_index(self):
        with pytest.raises(InvalidInputError):
            knot_correction(get_polynomial("1"), -1)


class TestLabels:
    """Test cases for the folded Spin^c labels."""

    def test_even_p(self):
        assert [spinc_label(8, 1, i) for i in range(8)] == [
            0, 1, 2, 3, 4, 3, 2, 1
        ]
        assert label_multiplicity(8, 0) == 1
        assert label_multiplicity(8, 4) == 1
        assert label_multiplicity(8, 3) == 2

    def test_odd_p(self):
        assert self_conjugate_index(7, 2) == 4
        assert spinc_label(7, 2, 4) == 0


class TestSurgeryFormula:
    """Test cases for d(S^3_{p/q}(K), i)."""

    def test_trefoil_one_surgery(self):
        result = d_surgery(Slope(1), get_polynomial("1"))
        assert result.multiset == (F(-2),)

    def test_three_surgery_on_t52(self):
        result = d_surgery(Slope(3), get_polynomial("2"))
        assert result.labeled == {0: F(-3, 2), 1: F(-13, 6)}

    def test_four_surgery_on_trefoil(self):
        result = d_surgery(Slope(4), get_polynomial("1"))
        assert result.row() == [F(-5, 4), F(0), F(-1, 4)]
        assert result.multiset == (F(-5, 4), F(-1, 4), F(0), F(0))

    def test_eight_surgery_on_t52(self):
        result = d_surgery(Slope(8), get_polynomial("2"))
        assert result.row() == [
            F(-1, 4), F(-9, 8), F(1, 4), F(-1, 8), F(-1, 4)
        ]

    def test_seven_surgery_on_t52(self):
        result = d_surgery(Slope(7), get_polynomial("2"))
        assert result.multiset == tuple(sorted([
            F(-1, 2), F(-19, 14), F(-19, 14), F(1, 14), F(1, 14),
            F(-3, 14), F(-3, 14),
        ]))

    def test_sixteen_surgery_on_t72(self):
        result = d_surgery(Slope(16), get_polynomial("3"))
        assert result.row() == [
            F(-1, 4), F(13, 16), F(0), F(21, 16), F(3, 4), F(5, 16), F(0),
            F(-3, 16), F(-1, 4),
        ]

    def test_fraction_slope(self):
        result = d_surgery(F(7, 2), get_polynomial("1"))
        assert result.slope == Slope(7, 2)
        assert len(result.values) == 7

    def test_not_lspace_slope(self):
        with pytest.raises(MethodInapplicableError, match="not an L-space slope"):
            d_surgery(Slope(2), get_polynomial("2"))


class TestMoser:
    """Test cases for Moser's classification."""

    def test_reducible(self):
        assert moser_classify(3, 2, Slope(6)) == ConnectedSum(
            LensSpace(3, 2), LensSpace(2, 3)
        )

    def test_lens_space(self):
        assert moser_classify(3, 2, Slope(7)) == LensSpace(7, 6)
        assert moser_classify(3, 2, Slope(5)) == LensSpace(5, 1)

    def test_poincare_sphere(self):
        assert moser_classify(3, 2, Slope(1)) == Seifert(
            SeifertData(-1, ((1, 2), (1, 3), (1, 5)))
        )

    def test_t52_seven_surgery(self):
        result = moser_classify(5, 2, Slope(7))
        assert isinstance(result, Seifert)
        assert same_manifold(
            result.data, SeifertData(-1, ((1, 2), (1, 3), (2, 5)))
        ) is True

    def test_negative_denominator(self):
        assert moser_classify(3, 2, Slope(8)) == Seifert(
            SeifertData(-1, ((1, 2), (1, 3), (-1, 2)))
        )

    def test_multiplicities_only(self):
        assert moser_classify(7, 3, Slope(19)) == MultiplicitiesOnly(7, 3, 2)

    def test_other_small_knots(self):
        assert moser_classify(4, 3, Slope(10)) == Seifert(
            SeifertData(-1, ((2, 3), (1, 4), (1, 2)))
        )
        assert moser_classify(5, 3, Slope(13)) == Seifert(
            SeifertData(-1, ((1, 3), (3, 5), (1, 2)))
        )

    def test_negative_r_rejected(self):
        with pytest.raises(InvalidInputError):
            moser_classify(-3, 2, Slope(1))


class TestCrossFormalism:
    """Surgery and plumbing must agree on every Seifert torus knot surgery."""

    @pytest.mark.parametrize("r,s,slope", [
        (3, 2, Slope(1)),
        (3, 2, Slope(2)),
        (3, 2, Slope(3)),
        (3, 2, Slope(4)),
        (3, 2, Slope(7, 2)),
        (3, 2, Slope(8)),
        (3, 2, Slope(9)),
        (3, 2, Slope(9, 2)),
        (3, 2, Slope(16, 3)),
        (5, 2, Slope(7)),
        (5, 2, Slope(8)),
        (5, 2, Slope(12)),
        (7, 2, Slope(12)),
    ])
    def test_torus_surgeries(self, r, s, slope):
        result = moser_classify(r, s, slope)
        assert isinstance(result, Seifert)
        from_surgery = d_surgery(slope, torus_alex(r, s)).multiset
        from_plumbing = d_invariants(to_plumbing(result.data)).multiset
        assert from_surgery == from_plumbing
