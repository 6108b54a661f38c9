"""
Unit tests for Alexander polynomials and the named polynomial registry.
"""

from fractions import Fraction

import pytest

from hf_surgery import knots
from hf_surgery.errors import InvalidInputError
from hf_surgery.knots import (
    AlexanderPoly,
    TorusKnot,
    enumerate_lspace_alex,
    from_exponents,
    get_available_polynomials,
    get_polynomial,
    is_lspace_alex,
    max_genus,
    name_of,
    parse_alex,
    register_polynomial,
    torus_alex,
)
from hf_surgery.surgery import Slope


class TestAlexanderPoly:
    """Test cases for AlexanderPoly."""

    def test_normalization(self):
        """Test that trailing zeros are stripped."""
        assert AlexanderPoly((-1, 1, 0, 0)).coeffs == (-1, 1)
        assert AlexanderPoly((1,)).genus == 0

    def test_must_evaluate_to_one(self):
        with pytest.raises(InvalidInputError):
            AlexanderPoly((1, 1))
        with pytest.raises(InvalidInputError):
            AlexanderPoly((0,))

    def test_torsions(self):
        """Test V_c for T(5,2) and the sparse genus-two polynomial."""
        assert get_polynomial("2").torsions() == (1, 1, 0)
        assert get_polynomial("2'").torsions() == (2, 1, 0)
        assert get_polynomial("2").torsion(0) == 1
        assert get_polynomial("2").torsion(7) == 0

    def test_text_forms(self):
        poly = get_polynomial("2")
        assert poly.to_text() == "1,-1,1"
        assert str(poly) == "T^2 - T + 1 ..."
        assert str(get_polynomial("1")) == "T - 1 ..."
        assert poly.exponents == (2, 1, 0)

    def test_lspace_type(self):
        assert is_lspace_alex(AlexanderPoly((1, -1, 0, 1)))
        assert not is_lspace_alex(AlexanderPoly((3, -1, -1, 1)))
        assert not is_lspace_alex(AlexanderPoly((1,)))


class TestEnumeration:
    """Test cases for enumerate_lspace_alex."""

    def test_counts(self):
        assert enumerate_lspace_alex(1) == [get_polynomial("1")]
        assert len(enumerate_lspace_alex(2)) == 3
        assert len(enumerate_lspace_alex(4)) == 15

    def test_growth(self):
        """Test that genus g adds 2^(g-1) polynomials."""
        for g in range(2, 8):
            added = len(enumerate_lspace_alex(g)) - len(enumerate_lspace_alex(g - 1))
            assert added == 2 ** (g - 1)

    def test_all_alternating_and_distinct(self):
        polys = enumerate_lspace_alex(5)
        assert all(is_lspace_alex(p) for p in polys)
        assert len(set(polys)) == len(polys)

    def test_invalid_bound(self):
        with pytest.raises(InvalidInputError):
            enumerate_lspace_alex(0)

    def test_max_genus(self):
        """Test the largest genus allowed by 2g - 1 <= p/q."""
        assert max_genus(Fraction(1)) == 1
        assert max_genus(Fraction(7, 2)) == 2
        assert max_genus(Fraction(9)) == 5
        assert max_genus(Slope(32)) == 16
        assert max_genus(Slope(1, 2)) == 0


class TestTorusKnots:
    """Test cases for torus knot polynomials."""

    def test_two_strand_knots(self):
        assert torus_alex(3, 2) == get_polynomial("1")
        assert torus_alex(5, 2) == get_polynomial("2")
        assert torus_alex(7, 2) == get_polynomial("3")

    def test_t43(self):
        """Test T(4,3): T^3 - T^2 + 1 - T^-2 + T^-3."""
        poly = torus_alex(4, 3)
        assert poly.coeffs == (1, 0, -1, 1)
        assert poly.genus == TorusKnot(4, 3).genus == 3

    def test_invalid_parameters(self):
        with pytest.raises(InvalidInputError):
            torus_alex(4, 2)
        with pytest.raises(InvalidInputError):
            TorusKnot(2, 3)


class TestPolynomialRegistry:
    """Test cases for the named polynomial registry."""

    def test_get_available_polynomials(self):
        polys = get_available_polynomials()
        assert isinstance(polys, dict)
        assert len(polys) == 13
        assert "8''" in polys
        assert all(is_lspace_alex(p) for p in polys.values())

    def test_get_polynomial_spellings(self):
        """Test D, Δ and prime spellings of the same name."""
        expected = get_polynomial("8''")
        assert get_polynomial("D8''") == expected
        assert get_polynomial("Δ8″") == expected
        assert expected.coeffs == (-1, 1, 0, -1, 0, 1, 0, -1, 1)

    def test_get_invalid_polynomial(self):
        with pytest.raises(InvalidInputError):
            get_polynomial("42")

    def test_register_polynomial(self, monkeypatch):
        monkeypatch.setattr(knots, "_NAMED", dict(knots._NAMED))
        poly = from_exponents(3, [1])
        register_polynomial("3'", poly)
        assert get_polynomial("D3'") == poly
        assert name_of(poly) == "D3'"

    def test_name_of(self):
        assert name_of(torus_alex(5, 2)) == "D2"
        assert name_of(from_exponents(5, [3])) == "1,0,-1,0,0,1"

    def test_parse_alex(self):
        assert parse_alex("1,-1,1") == get_polynomial("2")
        assert parse_alex("1, −1") == get_polynomial("1")
        with pytest.raises(InvalidInputError):
            parse_alex("1,2")
        with pytest.raises(InvalidInputError):
            parse_alex("a,b")
