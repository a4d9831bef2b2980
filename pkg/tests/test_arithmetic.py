"""Sieve table and the divisor-transform coefficient against brute force."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zdl import (
    beta_by_definition,
    beta_closed_form,
    beta_definition_table,
    build_table,
    divisors,
    liouville,
    omega,
)
from zdl.errors import InvalidBoundError, TableRangeError

from oracles import beta_brute, divisors_brute, liouville_brute, omega_brute


def test_build_table_basics(table2k):
    assert table2k.n_max == 2000
    assert table2k.smallest_prime_factor[2] == 2
    assert table2k.smallest_prime_factor[97] == 97
    assert table2k.smallest_prime_factor[91] == 7
    assert omega(table2k, 1) == 0
    assert liouville(table2k, 1) == 1


def test_omega_matches_brute_force(table2k):
    for n in range(1, 2001):
        assert omega(table2k, n) == omega_brute(n)


def test_liouville_matches_brute_force(table2k):
    for n in range(1, 2001):
        assert liouville(table2k, n) == liouville_brute(n)


def test_beta_by_definition_matches_brute_force(table2k):
    for n in range(1, 501):
        assert beta_by_definition(table2k, n) == beta_brute(n)


def test_beta_closed_form_trichotomy():
    # +1 on squares, -2 on twice-squares, 0 everywhere else
    for n in range(1, 2001):
        root = math.isqrt(n)
        if root * root == n:
            assert beta_closed_form(n) == 1
        elif n % 2 == 0 and math.isqrt(n // 2) ** 2 == n // 2:
            assert beta_closed_form(n) == -2
        else:
            assert beta_closed_form(n) == 0


def test_beta_routes_agree_in_bulk(table2k):
    by_def = beta_definition_table(table2k)
    assert np.array_equal(by_def[1:], table2k.beta[1:])


def test_divisors_sorted_and_complete(table2k):
    for n in (1, 2, 12, 97, 360, 1024, 1999):
        assert divisors(table2k, n) == divisors_brute(n)


def test_rejects_nonpositive_bound():
    with pytest.raises(InvalidBoundError):
        build_table(0)


def test_rejects_out_of_range_index(table2k):
    with pytest.raises(TableRangeError):
        omega(table2k, 0)
    with pytest.raises(TableRangeError):
        liouville(table2k, 2001)
    with pytest.raises(InvalidBoundError):
        beta_closed_form(0)


@given(a=st.integers(1, 1000), b=st.integers(1, 1000))
def test_liouville_completely_multiplicative(table1m, a, b):
    assert liouville(table1m, a * b) == liouville(table1m, a) * liouville(table1m, b)
    assert omega(table1m, a * b) == omega(table1m, a) + omega(table1m, b)
