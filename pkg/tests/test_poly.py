from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import R3, R3_F5, polys
from ringcheck.errors import ParseError, PreconditionError
from ringcheck.lang import parse_poly
from ringcheck.poly import (GF, GREVLEX, LEX, QQ, PolyRing, compare_monomials, format_poly,
                            monomials_up_to)

monos3 = st.tuples(*[st.integers(0, 4)] * 3)


def test_grevlex_examples():
    assert compare_monomials((1, 0, 0), (0, 1, 0), GREVLEX) == "greater"
    assert compare_monomials((1, 0, 1), (0, 2, 0), GREVLEX) == "less"
    assert compare_monomials((0, 0, 2), (1, 0, 0), LEX) == "less"


@given(monos3, monos3, monos3)
def test_order_is_monomial_order(a, b, c):
    for order in (LEX, GREVLEX):
        ab = compare_monomials(a, b, order)
        if ab == "greater":
            shifted = compare_monomials(tuple(x + z for x, z in zip(a, c)),
                                        tuple(y + z for y, z in zip(b, c)), order)
            assert shifted == "greater"
        assert compare_monomials(a, a, order) == "equal"
        assert {ab, compare_monomials(b, a, order)} in ({"equal"}, {"less", "greater"})
    # every monomial dominates the constant
    assert compare_monomials(a, (0, 0, 0), GREVLEX) in ("greater", "equal")


@given(polys(R3), polys(R3), polys(R3))
def test_ring_axioms_qq(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R3.zero
    assert f * R3.one == f


@given(polys(R3_F5), polys(R3_F5))
def test_characteristic_five(f, g):
    assert (f + g) ** 5 == f ** 5 + g ** 5
    assert f * 5 == R3_F5.zero


@given(polys(R3, coeffs=(-7, 7)))
def test_print_parse_round_trip(f):
    assert parse_poly(format_poly(f), R3) == f


@given(polys(R3_F5))
def test_print_parse_round_trip_gf(f):
    assert parse_poly(format_poly(f), R3_F5) == f


def test_parse_rational_coefficients():
    f = parse_poly("x/2 - 3*y^2/4 + (x+1)^2", R3)
    assert f.terms[(1, 0, 0)] == Fraction(5, 2)
    assert f.terms[(0, 2, 0)] == Fraction(-3, 4)
    assert f.constant_coeff() == 1


def test_leading_data():
    f = parse_poly("x*y^2 + 3*x^3 - z", R3)
    assert f.lm == (3, 0, 0)
    assert f.lc == 3
    assert f.total_degree() == 3
    assert not f.is_monomial and parse_poly("4*x*z", R3).is_monomial


def test_derivative():
    f = parse_poly("x^3*y + 2*y", R3)
    assert f.diff(0) == parse_poly("3*x^2*y", R3)
    assert f.diff(2) == R3.zero


@pytest.mark.parametrize("p", [4, 1, -3, 9])
def test_non_prime_modulus_rejected(p):
    with pytest.raises(PreconditionError):
        GF(p)


@pytest.mark.parametrize("bad", ["x +", "x ** y", "w", "x/0", "(x", "x^-1", "x/y"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad, R3)


def test_monomial_count():
    # C(n + d, d)
    assert len(monomials_up_to(3, 3)) == 20
    assert len(monomials_up_to(2, 4)) == 15


def test_field_names():
    assert str(QQ) == "QQ" and str(GF(7)) == "GF(7)"
    assert PolyRing(["a"], GF(3)).field.characteristic == 3
