"""Shared fixtures: sieve tables at three sizes and the first refined zero."""

import pytest

from zdl import build_table, refine, scan_critical_line


@pytest.fixture(scope="session")
def table2k():
    return build_table(2000)


@pytest.fixture(scope="session")
def table100k():
    return build_table(100_000)


@pytest.fixture(scope="session")
def table1m():
    return build_table(1_000_000)


@pytest.fixture(scope="session")
def first_zero():
    brackets = scan_critical_line(14.0, 14.3, 0.01)
    assert len(brackets) == 1
    return refine(brackets[0])
