from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gradedhopf.core import (InputError, as_fraction, format_rational, koszul_sign, parse_rational,
                             permutation_sign, rank, shuffles, solve_linear)


def test_rational_text_roundtrip():
    for q in [Fraction(0), Fraction(-3), Fraction(7, 12), Fraction(-1, 24)]:
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", ""])
def test_bad_rationals(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


def test_floats_rejected():
    with pytest.raises(InputError):
        as_fraction(0.5)


def test_koszul_sign_examples():
    # swapping two odd slots
    assert koszul_sign([2, 1], [1, 1]) == -1
    assert koszul_sign([2, 1], [1, 0]) == 1
    # cyclic shift of three odd slots is even
    assert koszul_sign([2, 3, 1], [1, 1, 1]) == 1
    with pytest.raises(InputError):
        koszul_sign([1, 1], [0, 0])


@given(st.permutations(range(5)), st.permutations(range(5)), st.lists(st.integers(0, 1), min_size=5, max_size=5))
def test_permutation_sign_is_a_cocycle(p, q, par):
    # composing rearrangements multiplies signs
    pq = [p[q[k]] for k in range(5)]
    s_p = permutation_sign(p, par)
    s_q = permutation_sign(q, [par[p[k]] for k in range(5)])
    assert permutation_sign(pq, par) == s_p * s_q


def test_shuffles_count():
    assert len(list(shuffles(5, 2))) == 10


def test_rank_and_solve():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)], [Fraction(0), Fraction(1)]]
    assert rank(rows) == 2
    sol = solve_linear([[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]], [Fraction(3), Fraction(1)])
    assert sol == [Fraction(2), Fraction(1)]
