"""Sieved tables of multiplicative arithmetic functions.

Builds flat integer tables, indexed by n, of

* Omega(n), the number of prime factors of n counted with multiplicity,
* the Liouville function liouville(n) = (-1)**Omega(n),
* the signed divisor transform
      beta(n) = sum over divisors d of n of liouville(d) * (-1)**(n/d + 1),

for 1 <= n <= n_max.  beta(n) collapses to a closed form: it is 1 when n
is a perfect square, -2 when n is twice a perfect square, and 0 otherwise.
The table stores the closed form; `beta_by_definition` re-derives single
values straight from the divisor sum so the two routes can be played off
against each other.
"""

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import InvalidBoundError, TableRangeError


@dataclass
class ArithmeticTable:
    """Sieve output for 1..n_max.  Index 0 of every array is unused.

    Attributes:
        n_max: inclusive upper bound of the table.
        smallest_prime_factor: int64, smallest_prime_factor[n] is the least
            prime dividing n (and 1 at n = 1).
        omega: int16 prime-factor counts with multiplicity, omega[1] = 0.
        liouville: int8 values in {-1, +1}, liouville[n] = (-1)**omega[n].
        beta: int8 values in {1, -2, 0} via the square / twice-square rule.
    """

    n_max: int
    smallest_prime_factor: np.ndarray
    omega: np.ndarray
    liouville: np.ndarray
    beta: np.ndarray


def build_table(n_max: int) -> ArithmeticTable:
    """Sieve all tables up to n_max.

    The smallest-prime-factor array is filled by walking primes in
    increasing order, so the first write to a slot wins.  Omega is then
    accumulated by adding 1 along every prime-power progression, which
    counts multiplicity exactly.

    Args:
        n_max: inclusive bound, at least 1.

    Returns:
        ArithmeticTable with all four arrays populated.

    Raises:
        InvalidBoundError: if n_max < 1.
    """
    if n_max < 1:
        raise InvalidBoundError(f"table bound must be >= 1, got {n_max}")

    spf = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        spf[1] = 1
    for p in range(2, n_max + 1):
        if spf[p] == 0:
            stride = spf[p::p]
            stride[stride == 0] = p

    omega = np.zeros(n_max + 1, dtype=np.int16)
    for p in range(2, n_max + 1):
        if spf[p] == p:
            pk = p
            while pk <= n_max:
                omega[pk::pk] += 1
                pk *= p

    liouville = (1 - 2 * (omega & 1)).astype(np.int8)
    liouville[0] = 0

    beta = np.zeros(n_max + 1, dtype=np.int8)
    squares = np.arange(1, isqrt(n_max) + 1, dtype=np.int64) ** 2
    beta[squares] = 1
    twice = 2 * np.arange(1, isqrt(n_max // 2) + 1, dtype=np.int64) ** 2
    beta[twice] = -2

    return ArithmeticTable(n_max, spf, omega, liouville, beta)


def _check_index(table: ArithmeticTable, n: int) -> None:
    if not 1 <= n <= table.n_max:
        raise TableRangeError(f"index {n} outside table range 1..{table.n_max}")


def omega(table: ArithmeticTable, m: int) -> int:
    """Prime-factor count of m with multiplicity."""
    _check_index(table, m)
    return int(table.omega[m])


def liouville(table: ArithmeticTable, m: int) -> int:
    """Liouville function (-1)**Omega(m)."""
    _check_index(table, m)
    return int(table.liouville[m])


def divisors(table: ArithmeticTable, n: int) -> list:
    """All divisors of n in increasing order, from the stored factorization."""
    _check_index(table, n)
    divs = [1]
    spf = table.smallest_prime_factor
    while n > 1:
        p = int(spf[n])
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        divs = [d * p**e for d in divs for e in range(k + 1)]
    divs.sort()
    return divs


def beta_by_definition(table: ArithmeticTable, n: int) -> int:
    """Signed divisor transform evaluated term by term.

    Sums liouville(d) * (-1)**(n/d + 1) over every divisor d of n.  Kept
    deliberately independent of the closed form stored in the table.
    """
    _check_index(table, n)
    lam = table.liouville
    total = 0
    for d in divisors(table, n):
        co = n // d
        sign = -1 if co % 2 == 0 else 1
        total += int(lam[d]) * sign
    return total


def beta_closed_form(n: int) -> int:
    """1 if n is a square, -2 if n is twice a square, else 0.

    Square detection is integer-exact (isqrt and multiply back), so the
    result is reliable for any n >= 1 regardless of table bounds.
    """
    if n < 1:
        raise InvalidBoundError(f"beta is defined for n >= 1, got {n}")
    r = isqrt(n)
    if r * r == n:
        return 1
    if n % 2 == 0:
        h = n // 2
        r = isqrt(h)
        if r * r == h:
            return -2
    return 0


def beta_definition_table(table: ArithmeticTable) -> np.ndarray:
    """Divisor-sum route for every n at once.

    Accumulates liouville(m) * (-1)**(l+1) into slot m*l for all pairs
    m*l <= n_max, one strided slice per m.  This enumerates exactly the
    divisor pairs of each n, so it is the definition, vectorized; it never
    consults the square / twice-square rule.

    Returns:
        int64 array b with b[n] = beta(n) for 1 <= n <= n_max, b[0] = 0.
    """
    n_max = table.n_max
    acc = np.zeros(n_max + 1, dtype=np.int64)
    alt = np.empty(n_max + 1, dtype=np.int64)
    alt[1::2] = 1
    alt[0::2] = -1
    lam = table.liouville
    for m in range(1, n_max + 1):
        count = n_max // m
        acc[m::m] += int(lam[m]) * alt[1:count + 1]
    return acc
