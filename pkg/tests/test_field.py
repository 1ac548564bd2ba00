"""Arithmetic in Q(sqrt(2), i): exact axioms, conjugation, square roots."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from contactconics import FieldElem, ONE, ZERO
from contactconics.field import I, SQRT2

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
elements = st.builds(FieldElem, rationals, rationals, rationals, rationals)


def test_constants():
    assert ZERO.is_zero()
    assert ONE.as_rational() == 1
    assert SQRT2 * SQRT2 == FieldElem.from_rational(2)
    assert I * I == FieldElem.from_rational(-1)
    assert (SQRT2 * I) ** 2 == FieldElem.from_rational(-2)


def test_coercion_and_rationals():
    assert FieldElem.coerce(3) == FieldElem.from_rational(3)
    assert FieldElem.coerce(Fraction(2, 7)).as_rational() == Fraction(2, 7)
    assert FieldElem.from_rational(5).is_rational()
    assert not SQRT2.is_rational()
    assert SQRT2.is_real()
    assert not I.is_real()


@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elements)
def test_additive_structure(a):
    assert a + ZERO == a
    assert a + (-a) == ZERO
    assert a - a == ZERO


@given(elements)
def test_multiplicative_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inv()
    else:
        assert a * a.inv() == ONE
        assert (ONE / a) * a == ONE


@given(elements)
def test_conjugations_are_involutions(a):
    assert a.conj_sqrt2().conj_sqrt2() == a
    assert a.conj_i().conj_i() == a
    assert a.conj_sqrt2().conj_i() == a.conj_i().conj_sqrt2()


@given(elements)
def test_norm_is_rational_product_of_conjugates(a):
    product = ONE
    for conjugate in a.conjugates():
        product = product * conjugate
    assert product.is_rational()
    assert product.as_rational() == a.norm_to_q()


@given(elements)
def test_lex_sign_trichotomy(a):
    if a.is_zero():
        assert not a.is_lex_positive()
        assert not (-a).is_lex_positive()
    else:
        assert a.is_lex_positive() != (-a).is_lex_positive()


@settings(deadline=None, max_examples=30)
@given(elements)
def test_square_root_round_trip(a):
    square = a * a
    root = square.sqrt()
    assert root is not None
    assert root * root == square


def test_sqrt_of_non_square_is_none():
    assert FieldElem.from_rational(3).sqrt() is None
    assert (SQRT2 + ONE).sqrt() is None


def test_pow_negative_exponent():
    assert SQRT2 ** -2 == FieldElem.from_rational(Fraction(1, 2))


def test_str_round_trip_examples():
    from contactconics import parse_field_elem

    for text in ("0", "1", "-3/2", "r2", "i", "1/2*r2*i", "1 + r2 - 2*i"):
        value = parse_field_elem(text)
        assert parse_field_elem(str(value)) == value
