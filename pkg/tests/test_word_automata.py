import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from betacantor.beta_core import expansion_of_one, is_admissible
from betacantor.errors import NotSimple, Reducible
from betacantor.field import Beta
from betacantor.word_automata import (build_automaton, count_admissible, dimension_from_matrix,
                                      enumerate_restricted, iter_admissible, perron_eigenvalue,
                                      word_count_table)

from _util import near

CUBIC = "poly:[-1,0,-1,1]@[1.4,1.5]"  # beta^3 = beta^2 + 1
CUBIC_MATRIX = [[1, 1, 1], [1, 0, 0], [1, 1, 0]]


def brute_count(one, k, digits=None, pad=0):
    alphabet = range(one.floor_beta + 1) if digits is None else digits
    return sum(is_admissible(one, w, pad) for w in itertools.product(alphabet, repeat=k))


def test_count_examples(golden):
    assert count_admissible(expansion_of_one(2), 5) == 32
    g = expansion_of_one(golden)
    assert count_admissible(g, 3) == 5
    assert list(iter_admissible(g, 3)) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]
    table = word_count_table(g, 3)
    lo, hi = table.growth_bounds(3)
    assert near(lo, "4.2360679774997896964", 1e-15) and near(hi, "11.090169943749474241", 1e-15)
    assert table.within_bounds(3)


def test_golden_counts_are_fibonacci(golden):
    g = expansion_of_one(golden)
    fib = [2, 3]
    while len(fib) < 20:
        fib.append(fib[-1] + fib[-2])
    assert [count_admissible(g, k) for k in range(1, 21)] == fib


@pytest.mark.parametrize("spec,kmax", [("poly:[-1,-1,1]@[1,2]", 10), ("5/2", 7), ("3.6", 5),
                                       (CUBIC, 10), ("7/2", 5)])
def test_counting_routes_agree_with_brute_force(spec, kmax):
    one = expansion_of_one(Beta.parse(spec), 64)
    for k in range(1, kmax + 1):
        n = count_admissible(one, k)
        assert n == brute_count(one, k)
        assert n == sum(1 for _ in iter_admissible(one, k))


def test_padding_changes_counts():
    one = expansion_of_one("3.6", 64)
    for k in range(1, 5):
        assert count_admissible(one, k, (1, 2, 3), pad=1) == brute_count(one, k, (1, 2, 3), pad=1)


def test_enumerate_restricted_examples(one_plus_sqrt3):
    assert enumerate_restricted(expansion_of_one(3), (0, 2), 2) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    pairs = enumerate_restricted(expansion_of_one("3.6"), (0, 1, 3), 2)
    assert pairs == [p for p in itertools.product((0, 1, 3), repeat=2) if p != (3, 3)]
    assert enumerate_restricted(expansion_of_one(one_plus_sqrt3), (0, 2), 2) == [(0, 0), (0, 2), (2, 0)]
    with pytest.raises(ValueError):
        enumerate_restricted(expansion_of_one(3), (0, 4), 1)


def test_enumeration_sorted_and_distinct():
    words = enumerate_restricted(expansion_of_one("3.6"), (0, 1, 3), 6)
    assert words == sorted(set(words))


def test_automaton_examples(golden):
    assert build_automaton(expansion_of_one(golden)).matrix == ((1, 1), (1, 0))
    assert build_automaton(expansion_of_one(2)).matrix == ((2,),)
    with pytest.raises(NotSimple):
        build_automaton(expansion_of_one(Fraction(5, 2)))


@pytest.mark.parametrize("spec", ["poly:[-1,-1,1]@[1,2]", CUBIC, "poly:[-2,-2,1]@[2.7,2.8]", "3",
                                  "poly:[-1,-2,1]@[2.4,2.5]"])
def test_automaton_paths_match_counts(spec):
    one = expansion_of_one(Beta.parse(spec))
    a = build_automaton(one)
    for k in range(1, 13):
        assert a.path_count(k) == count_admissible(one, k)


@pytest.mark.parametrize("spec", ["poly:[-1,-1,1]@[1,2]", CUBIC, "poly:[-2,-2,1]@[2.7,2.8]"])
def test_automaton_eigenvalue_is_beta(spec):
    beta = Beta.parse(spec)
    rho = perron_eigenvalue(build_automaton(expansion_of_one(beta)).matrix)
    assert rho.overlaps(beta.enclosure()) and rho.width < 1e-9


def test_cubic_matrix_counts_even_lengths():
    one = expansion_of_one(Beta.parse(CUBIC))
    m = CUBIC_MATRIX
    for j in range(1, 9):
        total = 0
        for start in range(3):
            row = [int(i == start) for i in range(3)]
            for _ in range(j - 1):
                row = [sum(row[i] * m[i][c] for i in range(3)) for c in range(3)]
            total += sum(row)
        assert total == count_admissible(one, 2 * j)


def test_perron_examples():
    g = perron_eigenvalue([[1, 1], [1, 0]])
    assert near(g, "1.6180339887498948482", 1e-12)
    lam = perron_eigenvalue(CUBIC_MATRIX)
    assert near(lam, "2.1478990357047873540", 1e-12)
    poly = lam ** 3 - lam ** 2 - lam * 2 - 1
    assert poly.contains(0) or abs(poly.mid) < 1e-10
    two = perron_eigenvalue([[2]])
    assert two.lo == 2 and two.hi == 2
    assert perron_eigenvalue([[0, 1], [1, 0]]).contains(1)


def test_perron_errors():
    with pytest.raises(Reducible):
        perron_eigenvalue([[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        perron_eigenvalue([[1, -1], [1, 1]])
    with pytest.raises(ValueError):
        perron_eigenvalue([[1, 1]])


def test_dimension_from_matrix_examples():
    s = dimension_from_matrix([[1, 1], [1, 0]], Fraction(1, 3))
    assert near(s, "0.43801787948594241211", 1e-12)
    s = dimension_from_matrix(CUBIC_MATRIX, Fraction(1, 2), 2)
    # log(beta)/log(2) with beta^3 = beta^2 + 1
    assert near(s, "0.55146308974559554712", 1e-12)
    assert near(dimension_from_matrix([[2]], Fraction(1, 2)), 1, 1e-30)
    with pytest.raises(ValueError):
        dimension_from_matrix([[2]], 2)


bases = st.fractions(min_value=Fraction(11, 10), max_value=Fraction(9, 2), max_denominator=30)


@given(bases, st.integers(min_value=1, max_value=8), st.integers(min_value=1, max_value=8))
def test_growth_sandwich_and_submultiplicativity(b, j, k):
    assume(b > 1)
    one = expansion_of_one(b, 64)
    table = word_count_table(one, j + k)
    assert table.within_bounds(j) and table.within_bounds(k) and table.within_bounds(j + k)
    c = table.counts
    assert c[j + k] <= c[j] * c[k]
    assert c[j + 1] <= (one.floor_beta + 1) * c[j]
