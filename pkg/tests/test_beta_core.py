import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from betacantor.beta_core import (Order, admissibility_depth, evaluate, expand, expansion_of_one,
                                  is_admissible, lex_compare, t_beta_step, value_of_word)
from betacantor.errors import AmbiguousFloor, DepthExhausted, OutOfRange
from betacantor.field import Beta
from betacantor.highreal import HighReal

from _util import near

unit = st.fractions(min_value=0, max_value=Fraction(999, 1000), max_denominator=10 ** 4)
bases = st.fractions(min_value=Fraction(11, 10), max_value=Fraction(9, 2), max_denominator=40)


def greedy_oracle(beta, w) -> bool:
    """Admissible with zero padding iff the word is the greedy expansion of its own value."""
    if not w:
        return True
    x = value_of_word(beta, w)
    if x >= 1:
        return False
    return expand(beta, x, len(w)) == tuple(w)


def test_t_beta_step_examples():
    assert t_beta_step(3, 0) == (0, 0)
    d, r = t_beta_step(Fraction(5, 2), Fraction(1, 2))
    assert (d, r.as_fraction()) == (1, Fraction(1, 4))
    d, r = t_beta_step(Fraction(5, 2), Fraction(1, 4))
    assert (d, r.as_fraction()) == (0, Fraction(5, 8))


def test_t_beta_step_domain():
    with pytest.raises(OutOfRange):
        t_beta_step(2, 1)
    with pytest.raises(OutOfRange):
        t_beta_step(2, Fraction(-1, 3))


def test_t_beta_step_interval_branch_point():
    # 2 * [0.49, 0.51] straddles 1
    with pytest.raises(AmbiguousFloor):
        t_beta_step(2, HighReal(Fraction(49, 100), Fraction(51, 100)))
    d, r = t_beta_step(2, HighReal(Fraction(1, 10), Fraction(2, 10)))
    assert d == 0 and r.contains(HighReal(Fraction(2, 10), Fraction(4, 10)))


def test_expand_examples():
    assert expand(3, Fraction(1, 4), 4) == (0, 2, 0, 2)
    assert expand(Fraction(5, 2), Fraction(1, 2), 4) == (1, 0, 1, 1)
    assert expand(2, 0, 3) == (0, 0, 0)


def test_expand_ambiguous_position():
    with pytest.raises(AmbiguousFloor) as info:
        expand(2, HighReal(Fraction(1, 4) - Fraction(1, 10 ** 6), Fraction(1, 4) + Fraction(1, 10 ** 6)), 5)
    assert info.value.position == 2


def test_evaluate_examples():
    w = (0, 2) * 10
    assert near(evaluate(3, w), Fraction(1, 4), 3.0 ** -20 * 1.5)
    assert near(evaluate(4, (3,)), Fraction(3, 4), 1e-30)
    assert evaluate(Fraction(7, 3), ()).hi == 0


def test_expansion_of_one_examples(golden, one_plus_sqrt3):
    g = expansion_of_one(golden)
    assert g.eps == (1, 1) and g.status == "Simple(2)"
    assert g.quasi_greedy(6) == (1, 0, 1, 0, 1, 0)
    f = expansion_of_one(Fraction(5, 2), 7)
    assert f.eps == (2, 1, 0, 1, 1, 1, 0) and f.status == "NotSimpleWithinDepth(7)"
    r = expansion_of_one(one_plus_sqrt3)
    assert r.eps == (2, 2) and r.quasi_greedy(4) == (2, 1, 2, 1)
    four = expansion_of_one(4)
    assert four.eps == (4,) and four.quasi_greedy(3) == (3, 3, 3)


def test_expansion_of_one_decimal_bases():
    assert expansion_of_one("3.6", 9).eps == (3, 2, 0, 2, 0, 0, 3, 1, 2)
    assert expansion_of_one("3.1", 5).eps == (3, 0, 0, 2, 3)
    assert expansion_of_one("3.01", 6).eps == (3, 0, 0, 0, 0, 2)


def test_cubic_simple():
    b = Beta.parse("poly:[-1,0,-1,1]@[1.4,1.5]")  # x^3 = x^2 + 1
    one = expansion_of_one(b)
    assert one.eps == (1, 0, 1) and one.quasi_greedy(6) == (1, 0, 0, 1, 0, 0)


def test_deepen_and_depth_exhausted():
    one = expansion_of_one(Fraction(5, 2), 4)
    with pytest.raises(DepthExhausted):
        one.e(5)
    deeper = one.deepen(10)
    assert deeper.eps[:4] == one.eps and len(deeper.eps) == 10
    assert deeper.eps == expansion_of_one(Fraction(5, 2), 10).eps


def test_is_admissible_examples(golden):
    one = expansion_of_one(golden)
    assert not is_admissible(one, (1, 1))
    assert is_admissible(one, (1, 0, 1))
    assert is_admissible(one, (0,) * 12)
    assert is_admissible(expansion_of_one(Fraction(7, 2)), (0,) * 5)


def test_is_admissible_depth_exhausted():
    one = expansion_of_one(Fraction(5, 2), 3)  # e = (2,1,0,...)
    with pytest.raises(DepthExhausted):
        is_admissible(one, (2, 1, 0))


def test_admissibility_depth_guard():
    assert admissibility_depth((1, 0, 1)) == 9
    assert admissibility_depth((1, 0), guard=5) == 7


def test_lex_compare_examples():
    assert lex_compare((1, 0), (1, 1), 2) is Order.LESS
    assert lex_compare((2, 1), (2, 1), 2) is Order.EQUAL_TO_DEPTH
    assert lex_compare((3, 1, 3), (3, 2, 0), 3) is Order.LESS
    assert lex_compare((3, 2, 0), (3, 1, 3), 3) is Order.GREATER


@pytest.mark.parametrize("spec,kmax", [("poly:[-1,-1,1]@[1,2]", 8), ("5/2", 6), ("3.6", 4),
                                       ("poly:[-2,-2,1]@[2.7,2.8]", 5), ("4", 3)])
def test_admissibility_matches_greedy_oracle(spec, kmax):
    beta = Beta.parse(spec)
    one = expansion_of_one(beta, 64)
    for k in range(1, kmax + 1):
        for w in itertools.product(range(one.floor_beta + 1), repeat=k):
            assert is_admissible(one, w) == greedy_oracle(beta, w), w


@given(bases, unit, st.integers(min_value=1, max_value=30))
def test_round_trip(b, x, n):
    assume(b > 1)
    beta = Beta.rational(b)
    w = expand(beta, x, n)
    v = value_of_word(beta, w)
    assert v <= x
    assert x - v < beta.gen ** (-n) * beta.gen / (beta.gen - 1)
    assert all(0 <= d <= math.floor(b) for d in w)


@given(bases, unit, st.integers(min_value=1, max_value=12))
def test_expansion_is_admissible(b, x, n):
    assume(b > 1)
    beta = Beta.rational(b)
    one = expansion_of_one(beta, 4 * n + 8)
    w = expand(beta, x, n)
    try:
        assert is_admissible(one, w)
    except DepthExhausted:
        pass


@given(bases, bases)
def test_expansion_of_one_monotone(a, b):
    assume(1 < a < b)
    ea = expansion_of_one(a, 40)
    eb = expansion_of_one(b, 40)
    assert lex_compare(ea.quasi_greedy(min(40, ea.depth if not ea.is_simple else 40)),
                       eb.quasi_greedy(min(40, eb.depth if not eb.is_simple else 40)), 40) is not Order.GREATER
    # the greedy sequences (zero padded) are strictly ordered
    pa = ea.eps + (0,) * (40 - len(ea.eps))
    pb = eb.eps + (0,) * (40 - len(eb.eps))
    assert lex_compare(pa, pb, 40) is Order.LESS


@given(bases)
def test_quasi_greedy_shift_property(b):
    assume(b > 1)
    one = expansion_of_one(b, 40)
    n = 40 if one.is_simple else one.depth
    e = one.quasi_greedy(n)
    for k in range(1, n):
        assert lex_compare(e[k:], e, n - k) is not Order.GREATER


@given(bases)
def test_first_digit_is_floor(b):
    assume(b > 1)
    one = expansion_of_one(b, 8)
    assert one.eps[0] == math.floor(b)
    if one.is_simple:
        assert one.eps[-1] > 0
