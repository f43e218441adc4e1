from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from betacantor.errors import AmbiguousFloor, ParseError
from betacantor.field import Beta, as_beta, parse_rational

from _util import near


def test_decimal_inputs_are_exact():
    assert parse_rational("3.6") == Fraction(18, 5)
    assert Beta.parse("3.6").as_fraction() == Fraction(18, 5)
    assert Beta.parse("5/2").as_fraction() == Fraction(5, 2)
    assert Beta.parse(4).as_fraction() == 4


def test_poly_spec_root(golden):
    e = golden.enclosure()
    assert near(e, "1.6180339887498948482", 1e-18)
    assert golden.degree == 2
    g = golden.gen
    assert (g * g - g - 1).is_zero()


def test_poly_spec_without_root_is_parse_error():
    # the real root of x^3 = x + 1 is 1.3247..., outside [1.4, 1.5]
    with pytest.raises(ParseError):
        Beta.parse("poly:[-1,-1,0,1]@[1.4,1.5]")
    b = Beta.parse("poly:[-1,-1,0,1]@[1.3,1.4]")
    assert near(b.enclosure(), "1.32471795724474602596", 1e-18)


def test_reducible_polynomial_is_reduced():
    # (x^2 - 2)(x - 5) has the root sqrt 2 in [1, 2]
    b = Beta.parse("poly:[10,-2,-5,1]@[1,2]")
    assert b.degree == 2
    assert (b.gen * b.gen - 2).is_zero()


def test_rational_root_collapses_to_rational():
    b = Beta.parse("poly:[-6,1,1]@[1,3]")
    assert b.is_rational and b.as_fraction() == 2


@pytest.mark.parametrize("bad", ["", "abc", "poly:[1,2]", "poly:[1,1]@[0,1]", "1/0"])
def test_bad_specs(bad):
    with pytest.raises(ParseError):
        Beta.parse(bad)


def test_field_arithmetic_and_inverse(one_plus_sqrt3):
    b = one_plus_sqrt3.gen
    assert (b * b - 2 * b - 2).is_zero()
    assert (b.inverse() * b - 1).is_zero()
    # 2/b + 2/b^2 == 1
    assert 2 / b + 2 / b ** 2 == 1


def test_exact_floor_and_sign(one_plus_sqrt3):
    b = one_plus_sqrt3.gen
    assert b.floor() == 2
    assert (b - 2).sign() == 1
    assert (b * 2 - 2).floor() == 3
    assert (b - b).sign() == 0
    assert (b ** 3).floor() == 20


@given(st.fractions(min_value=-100, max_value=100, max_denominator=1000))
def test_rational_floor_matches(q):
    b = Beta.rational(Fraction(7, 3))
    assert b.elem(q).floor() == q.numerator // q.denominator


def test_comparisons(golden):
    g = golden.gen
    assert g > Fraction(161, 100) and g < Fraction(162, 100)
    assert g == g * 1 and hash(g) == hash(g * 1)
    assert sorted([g, g - 1, g + 1]) == [g - 1, g, g + 1]


def test_ambiguous_floor_type():
    assert issubclass(AmbiguousFloor, Exception)


def test_equal_fields_share_elements():
    a = as_beta("poly:[-2,-2,1]@[2.7,2.8]")
    b = as_beta("poly:[-2,-2,1]@[2.7,2.8]")
    a.enclosure(512)
    assert a.same_as(b) and b.same_as(a)
    assert (a.gen + b.one).field is a
    c = as_beta("poly:[-1,-2,1]@[2.4,2.5]")
    assert not a.same_as(c)
    with pytest.raises(ValueError):
        a.elem(c.gen)
    assert as_beta("11/5").same_as(as_beta("2.2"))
