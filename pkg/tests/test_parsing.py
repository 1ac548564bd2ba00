"""The shared text grammar for field elements, polynomials, and forms."""

from fractions import Fraction

import pytest

from contactconics import (
    FieldElem,
    ParseError,
    parse_bipoly,
    parse_field_elem,
    parse_point,
    parse_poly,
    parse_ratfunc,
    parse_section,
    parse_triform,
)
from contactconics.field import I, SQRT2


def test_field_elem_grammar():
    assert parse_field_elem("1/2") == FieldElem.from_rational(Fraction(1, 2))
    assert parse_field_elem("r2") == SQRT2
    assert parse_field_elem("i") == I
    assert parse_field_elem("r2*i") == SQRT2 * I
    assert parse_field_elem("-(1 - r2)^2") == -(FieldElem.from_rational(1) - SQRT2) ** 2
    assert parse_field_elem("2^3/4") == FieldElem.from_rational(2)


def test_poly_grammar():
    p = parse_poly("t^3 - 3/2*t + r2")
    assert p.degree == 3
    assert p.coeff(1) == FieldElem.from_rational(Fraction(-3, 2))
    assert p.coeff(0) == SQRT2
    assert parse_poly("(t - 1)*(t + 1)") == parse_poly("t^2 - 1")


def test_ratfunc_grammar():
    f = parse_ratfunc("(t^2 - 1)/(t - 1)")
    assert f == parse_ratfunc("t + 1")
    assert parse_ratfunc("1/t + 1/t") == parse_ratfunc("2/t")


def test_bipoly_grammar():
    f = parse_bipoly("x^3 + (t^2 - 3/2*t)*x^2 + (t^2 - t^3)*x + 1/8*t^2*(t - 1)^2")
    assert f.degree_x == 3
    assert f.coeff_x(2) == parse_poly("t^2 - 3/2*t")


def test_triform_grammar_requires_homogeneous():
    form = parse_triform("Z^2*X^2 + 2*Z^2*X*T + Z^2*T^2 + 2*T*X^2*Z - 2*T^2*X*Z - 4*T^2*X^2")
    assert form.degree == 4
    with pytest.raises(ParseError):
        parse_triform("T^2 + X")


def test_point_and_section_grammar():
    point = parse_point("[-1, 1, -1]")
    assert point == (-FieldElem.from_rational(1), FieldElem.from_rational(1), -FieldElem.from_rational(1))
    pair = parse_section("(t, 1/4*(r2*t^2 + r2*t))")
    assert pair is not None
    assert pair[0] == parse_ratfunc("t")
    assert parse_section("O") is None


@pytest.mark.parametrize(
    "bad",
    [
        "t +",
        "x^",
        "[1, 2]",
        "(t, )",
        "q + 1",
        "1//2",
    ],
)
def test_malformed_inputs_raise_parse_error(bad):
    with pytest.raises(ParseError):
        parse_point(bad) if bad.startswith("[") else parse_bipoly(bad)


def test_variables_are_scoped_per_parser():
    with pytest.raises(ParseError):
        parse_poly("x + 1")  # univariate polynomials use t
    with pytest.raises(ParseError):
        parse_triform("t*X*Z")  # forms use uppercase T, X, Z
