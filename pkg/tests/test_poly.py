from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparseblock.poly import Poly, falling, format_poly

coeffs = st.lists(st.integers(-20, 20), max_size=6)
points = st.integers(-6, 6)


@given(coeffs, coeffs, points)
def test_arithmetic_matches_evaluation(a, b, x):
    p, q = Poly(a, "Z"), Poly(b, "Z")
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(coeffs, st.integers(0, 4), points)
def test_power_matches_evaluation(a, n, x):
    p = Poly(a, "Z")
    assert (p**n)(x) == p(x) ** n


def test_trailing_zeros_are_dropped_and_constants_compare_to_scalars():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly([7]) == 7
    assert hash(Poly([7])) == hash(7)
    assert Poly([]) == 0


def test_nested_variables_act_as_scalars():
    d = Poly([0, 1], "d")
    Z = Poly([0, 1], "Z")
    p = Z * (d + 1) + Z * Z * 2
    assert p.var == "Z"
    assert p.subs("d", 2) == Poly([0, 3, 2], "Z")
    assert p.subs("d", 2)(1) == 5


def test_shift_and_exact_division():
    p = Poly([0, 0, 4, 6], "d")
    assert p.shift(-2) == Poly([4, 6], "d")
    assert p.exact_div(2) == Poly([0, 0, 2, 3], "d")
    with pytest.raises(ArithmeticError):
        p.shift(-3)
    with pytest.raises(ArithmeticError):
        p.exact_div(4)


def test_fraction_coefficients_normalize_to_int():
    p = Poly([Fraction(4, 2), Fraction(1, 3)], "p")
    assert p.coeffs == (2, Fraction(1, 3))
    assert isinstance(p.coeffs[0], int)


def test_falling_factorial():
    assert falling("Z", 0, 3) == Poly([0, 2, -3, 1], "Z")
    assert falling("Z", 1, 2)(5) == 4 * 3
    assert falling("Z", 0, 0) == 1


def test_formatting():
    assert format_poly(Poly([0, 14, 62, 56, 14], "Z")) == "14 Z + 62 Z^2 + 56 Z^3 + 14 Z^4"
    assert format_poly(Poly([1, -1], "Z")) == "1 - Z"
    assert format_poly(Poly([], "Z")) == "0"
    assert format_poly(Poly([5, 5, 2], "d"), descending=True) == "2 d^2 + 5 d + 5"
