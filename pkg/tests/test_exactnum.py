from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from partstat.exactnum import (
    CountTables,
    QPolynomial,
    bell,
    binomial,
    falling_factorial,
    q_integer,
    q_stirling_poly,
    stirling2,
    stirling2_summation,
    tables,
)
from partstat.partitions import rgf_words


def test_small_bell_numbers():
    # counted by hand: {}, {1}, {12 | 1/2}, five partitions of [3]
    assert [bell(n) for n in range(4)] == [1, 1, 2, 5]


def test_bell_matches_enumeration():
    for n in range(9):
        assert bell(n) == sum(1 for _ in rgf_words(n))


def test_stirling_matches_enumeration():
    for n in range(9):
        for k in range(n + 1):
            assert stirling2(n, k) == sum(1 for _ in rgf_words(n, k)), (n, k)


def test_stirling_boundaries():
    assert stirling2(0, 0) == 1
    assert stirling2(5, 0) == 0
    assert stirling2(3, 5) == 0
    assert stirling2(4, -1) == 0
    assert bell(-1) == 0


@given(st.integers(0, 40), st.integers(0, 40))
def test_summation_formula_agrees(n, k):
    assert stirling2_summation(n, k) == stirling2(n, k)


@given(st.integers(0, 60))
def test_bell_is_row_sum(n):
    assert bell(n) == sum(stirling2(n, k) for k in range(n + 1))


@given(st.integers(1, 60), st.integers(1, 60))
def test_stirling_recurrence(n, k):
    assert stirling2(n, k) == stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def test_bell_dobinski_like_recurrence():
    for n in range(40):
        assert bell(n + 1) == sum(comb(n, j) * bell(j) for j in range(n + 1))


def test_tables_grow_immutably():
    small = CountTables.build(5)
    big = small.extend(30)
    assert small.size == 5 and big.size == 30
    assert big.B(5) == small.B(5) == 52
    assert big.S(30, 2) == 2 ** 29 - 1
    assert small.extend(3) is small


def test_large_bell_numbers_are_fast():
    t = tables(410)
    assert t.B(410) == bell(410)
    assert bell(410) > 10 ** 600


def test_binomial_conventions():
    assert binomial(5, -1) == 0
    assert binomial(-2, 1) == 0
    assert binomial(5, 7) == 0
    assert binomial(6, 3) == 20


def test_falling_factorial():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 4) == 0
    assert falling_factorial(7, 0) == 1
    with pytest.raises(ValueError):
        falling_factorial(3, -1)


def test_qpolynomial_arithmetic():
    p = QPolynomial([1, 1])  # 1 + q
    assert p * p == QPolynomial([1, 2, 1])
    assert p + QPolynomial([0, 0, 3]) == QPolynomial([1, 1, 3])
    assert p(2) == 3
    assert QPolynomial([0, 1, 1]).derivative() == QPolynomial([1, 2])
    assert QPolynomial([1, 0, 0]) == QPolynomial([1])


def test_q_integer():
    assert q_integer(0) == QPolynomial()
    assert q_integer(3) == QPolynomial([1, 1, 1])


def test_q_stirling_values():
    # los over 12/3, 13/2, 1/23 is 1, 1, 2
    assert q_stirling_poly(3, 2) == QPolynomial([0, 2, 1])
    assert q_stirling_poly(4, 4) == QPolynomial.monomial(6)  # los(1/2/3/4) = 6
    assert q_stirling_poly(3, 0) == QPolynomial()


@given(st.integers(0, 12), st.integers(0, 12))
def test_q_stirling_at_one_is_stirling(n, k):
    assert q_stirling_poly(n, k)(1) == stirling2(n, k)


def test_q_stirling_derivative_is_rational_exact():
    poly = q_stirling_poly(5, 3)
    assert isinstance(Fraction(poly.derivative()(1), poly(1)), Fraction)
