"""Independent reference values for the test suite.

Nothing in this file touches the package's accelerated evaluator or its
sieve: zeta comes from Euler-Maclaurin summation of the plain Dirichlet
series, arithmetic functions from trial division, and rectangle sums
from closed forms derived by hand.  Agreement between these slow routes
and the package is what the tests actually assert.
"""

import cmath
import math

# Bernoulli numbers B_2, B_4, ..., B_14 for the Euler-Maclaurin tail.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


def zeta_em(s: complex, cut: int = 60) -> complex:
    """zeta(s) by direct summation to `cut` plus the Euler-Maclaurin tail.

    Good to near machine precision for re(s) > 0 at moderate |im(s)|,
    which covers every point the tests evaluate.  Completely independent
    of the package's accelerated alternating-series route.
    """
    s = complex(s)
    if s == 1.0:
        raise ValueError("zeta has a pole at s = 1")
    head = sum(cmath.exp(-s * math.log(n)) for n in range(1, cut))
    ncut = float(cut)
    tail = cmath.exp(-s * math.log(ncut))
    total = head + 0.5 * tail + ncut * tail / (s - 1.0)
    # rising holds s(s+1)...(s+2k-2) * cut**(-s-2k+1) as k advances.
    rising = tail * s / ncut
    inv_factorial = 1.0
    for i, b in enumerate(_BERNOULLI):
        k = 2 * i + 2
        inv_factorial = inv_factorial / ((k - 1) * k)
        total += b * inv_factorial * rising
        rising = rising * (s + k - 1) * (s + k) / (ncut * ncut)
    return total


def zeta_direct_even(power: int, cut: int = 10**6) -> float:
    """zeta at a positive even integer by compensated direct summation.

    The tail past `cut` is replaced by the integral plus half-term
    correction, leaving an error around cut**-(power+1).
    """
    total = math.fsum(n ** (-float(power)) for n in range(1, cut + 1))
    tail = float(cut) ** (1 - power) / (power - 1) - 0.5 * float(cut) ** (-power)
    return total + tail


def eta_reference(s: complex) -> complex:
    """eta(s) through the product form with the Euler-Maclaurin zeta."""
    s = complex(s)
    if s == 1.0:
        return complex(math.log(2.0))
    return (1.0 - cmath.exp((1.0 - s) * math.log(2.0))) * zeta_em(s)


def omega_brute(n: int) -> int:
    """Prime factors with multiplicity, by trial division."""
    count = 0
    d = 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    if n > 1:
        count += 1
    return count


def liouville_brute(n: int) -> int:
    return -1 if omega_brute(n) % 2 else 1


def divisors_brute(n: int) -> list:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def beta_brute(n: int) -> int:
    """The signed divisor transform of the Liouville function, literally."""
    total = 0
    for d in divisors_brute(n):
        sign = 1 if (n // d) % 2 == 1 else -1
        total += liouville_brute(d) * sign
    return total


def cesaro_rectangle(m: int, n: int) -> float:
    """Closed-form rectangle sum for the row/column counterexample.

    Summing the geometric rows first gives
    S(M, N) = sum_{n<=N} (-1)**(n+1) * (1 - (1 - b_n)**M)
    with b_n = 2**(-(n//2) - 1).
    """
    total = 0.0
    for j in range(1, n + 1):
        b = 2.0 ** (-(j // 2) - 1)
        sign = 1.0 if j % 2 == 1 else -1.0
        total += sign * (1.0 - (1.0 - b) ** m)
    return total


def lee_term_brute(s: complex, m: int, n: int) -> complex:
    if n % m != 0:
        return 0j
    j = n // m
    sign = 1.0 if j % 2 == 1 else -1.0
    return liouville_brute(m) * sign * cmath.exp(-complex(s) * math.log(n))


# Frozen targets derived from the oracles above (and only from them).
ZETA2 = zeta_direct_even(2)
ZETA4 = zeta_direct_even(4)
LAMBDA_SERIES_AT_2 = ZETA4 / ZETA2            # limit of the Liouville series at s=2
LEE_COMMON_VALUE_AT_2 = 0.5 * ZETA4           # (1 - 2**(1-2)) * zeta(4)

# Known low critical-line zero ordinates, to the precision the suite needs.
FIRST_ZERO_T = 14.134725
SECOND_ZERO_T = 21.022040
