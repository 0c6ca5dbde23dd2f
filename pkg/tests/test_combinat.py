from fractions import Fraction
from math import factorial

import pytest

from genehrhart.combinat import (
    binomial,
    power_numerator,
    rising_factorial,
    stirling2,
    stirling_rep,
)
from genehrhart.genseries import RatFn


@pytest.mark.parametrize("n,k,expected", [(5, 2, 10), (-3, 0, 1), (0, 0, 1), (7, 0, 1),
                                           (-1, 2, 1), (3, 5, 0), (-2, 3, -4)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_rejects_negative_k():
    with pytest.raises(ValueError):
        binomial(3, -1)


def test_stirling_rep_examples():
    assert stirling_rep(0) == (1,)
    assert stirling_rep(1) == (-1, 1)
    assert stirling_rep(2) == (1, -3, 1)


def test_stirling_rep_matches_second_kind():
    for m in range(13):
        row = stirling_rep(m)
        assert row[m] == 1
        for j, s in enumerate(row):
            assert s == (-1) ** (m - j) * stirling2(m + 1, j + 1)


def test_stirling_identity():
    for m in range(13):
        row = stirling_rep(m)
        for k in range(21):
            assert sum(s * rising_factorial(k + 1, j) for j, s in enumerate(row)) == k ** m


def test_power_numerator_examples():
    assert power_numerator(0) == (1,)
    assert power_numerator(2) == (0, 1, 1)
    assert power_numerator(3) == (0, 1, 4, 1)


def test_power_numerator_sums_to_factorial():
    for m in range(13):
        a = power_numerator(m)
        assert sum(a) == factorial(m)
        assert len(a) == m + 1
        if m:
            assert a[0] == 0


def test_power_series_identity():
    for m in range(9):
        rf = RatFn(power_numerator(m), [(1, m + 1)])
        assert rf.series(30) == [Fraction(k ** m) for k in range(30)]


def test_eulerian_recurrence():
    # A(m, j) = j A(m-1, j) + (m - j + 1) A(m-1, j-1)
    for m in range(2, 10):
        prev, cur = power_numerator(m - 1), power_numerator(m)
        for j in range(1, m + 1):
            a = j * (prev[j] if j < len(prev) else 0) + (m - j + 1) * prev[j - 1]
            assert cur[j] == a
