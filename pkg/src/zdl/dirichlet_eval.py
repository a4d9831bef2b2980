"""Accelerated evaluation of the alternating zeta (eta) function and friends.

eta(s) = sum (-1)**(n+1) / n**s converges for re(s) > 0 and is summed here
with the Chebyshev-weighted acceleration scheme: integer coefficients d_k
turn the first `order` terms into an approximation whose error shrinks
geometrically like (3 + sqrt(8))**(-order).  The Riemann zeta function is
recovered through the bridge

    zeta(s) = eta(s) / (1 - 2**(1-s)),

which degenerates at s = 1 (pole) and at the off-axis zeros of the bridge
factor, s = 1 + 2*pi*i*k/log(2) for k != 0.  At those exceptional points
zeta is instead the limit eta'(s) / log(2), computed by central finite
differences with one Richardson step.

Also provided: truncated Euler products and partial sums of the Liouville
Dirichlet series and of the sparse signed-square series, the two series
whose comparison drives the double-array experiments.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import ArithmeticTable
from .errors import (
    DomainError,
    ExceptionalPointError,
    InvalidBoundError,
    PoleError,
    TableRangeError,
)

# Geometric rate of the acceleration scheme; one accelerated term gains
# log10(3+sqrt(8)) ~ 0.77 digits.
_RATE = 3.0 + math.sqrt(8.0)
_LOG_RATE = math.log(_RATE)

# Spacing of the exceptional points along im(s).
EXCEPTIONAL_SPACING = 2.0 * math.pi / math.log(2.0)

# Orders above this overflow float conversion of the integer coefficients.
_MAX_ORDER = 380

# Guard radius around exceptional points for the bridge evaluator.
EXCEPTIONAL_RADIUS = 1e-8

_SERIES_CHUNK = 1 << 18

_weight_cache: dict = {}


@dataclass(frozen=True)
class EvalResult:
    """A value together with its error budget.

    error_estimate is an a-priori bound on the acceleration truncation
    plus a rounding allowance; it is deliberately conservative.
    """

    value: complex
    error_estimate: float
    terms_used: int


def _require_point(s: complex) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"evaluation point must be finite, got {s}")
    return s


def _weights(order: int) -> np.ndarray:
    """Normalized acceleration weights c_k = (d_order - d_k) / d_order.

    The d_k are the exact integer partial sums of the Chebyshev-derived
    coefficient recurrence; eta(s) ~ sum (-1)**k c_k (k+1)**(-s).
    """
    cached = _weight_cache.get(order)
    if cached is not None:
        return cached
    d = 1
    partial = [1]
    for i in range(1, order + 1):
        d = d * 4 * (order + i - 1) * (order - i + 1) // ((2 * i) * (2 * i - 1))
        partial.append(partial[-1] + d)
    top = partial[-1]
    c = np.array([(top - dk) / top for dk in partial[:-1]], dtype=np.float64)
    signs = np.where(np.arange(order) % 2 == 0, 1.0, -1.0)
    w = signs * c
    _weight_cache[order] = w
    return w


def truncation_bound(order: int, s: complex) -> float:
    """A-priori bound on the acceleration error at the given order.

    3 * (1 + 2|t|) * exp(pi |t| / 2) / (3 + sqrt(8))**order, inflated by
    4**(1/2 - sigma) left of the critical line where the sharp constant
    is not available.
    """
    t = abs(s.imag)
    log_bound = (
        math.log(3.0 * (1.0 + 2.0 * t))
        + 0.5 * math.pi * t
        - order * _LOG_RATE
    )
    if s.real < 0.5:
        log_bound += (0.5 - s.real) * math.log(4.0)
    if log_bound > 700.0:
        return math.inf
    return math.exp(log_bound)


def default_order(s: complex) -> int:
    """Smallest order (at least 60) whose a-priori bound is below 1e-13."""
    t = abs(s.imag)
    need = (
        0.5 * math.pi * t
        + math.log(3.0 * (1.0 + 2.0 * t))
        + 13.0 * math.log(10.0)
        + (0.5 - min(s.real, 0.5)) * math.log(4.0)
    ) / _LOG_RATE
    order = max(60, math.ceil(need))
    if order > _MAX_ORDER:
        raise DomainError(
            f"|im(s)| = {t:.1f} needs acceleration order {order}, "
            f"beyond the supported {_MAX_ORDER}"
        )
    return order


def eta(s: complex, order: int | None = None) -> EvalResult:
    """Alternating zeta function for re(s) > 0.

    Args:
        s: evaluation point with positive real part.
        order: acceleration order; default picks one from the error bound.

    Returns:
        EvalResult; error_estimate covers truncation plus rounding.

    Raises:
        DomainError: if re(s) <= 0 or s is not finite.
    """
    s = _require_point(s)
    if s.real <= 0.0:
        raise DomainError(f"eta is evaluated only for re(s) > 0, got {s}")
    if order is None:
        order = default_order(s)
    elif not 1 <= order <= _MAX_ORDER:
        raise InvalidBoundError(f"order must be in 1..{_MAX_ORDER}, got {order}")
    w = _weights(order)
    k = np.arange(1, order + 1, dtype=np.float64)
    powers = np.exp(-s * np.log(k))
    value = complex(np.sum(w * powers))
    scale = float(np.sum(np.abs(w) * k ** (-s.real)))
    estimate = truncation_bound(order, s) + 8.0 * np.finfo(float).eps * scale
    return EvalResult(value, estimate, order)


def eta_line(sigma: float, ts: np.ndarray, order: int | None = None) -> np.ndarray:
    """Vectorized eta along the vertical line re(s) = sigma.

    Used by the zero scanner, which needs thousands of samples.  Matches
    eta() pointwise: same weights, same power evaluations.
    """
    if sigma <= 0.0:
        raise DomainError(f"eta is evaluated only for re(s) > 0, got sigma={sigma}")
    ts = np.asarray(ts, dtype=np.float64)
    t_peak = float(np.max(np.abs(ts))) if ts.size else 0.0
    if order is None:
        order = default_order(complex(sigma, t_peak))
    w = _weights(order)
    logk = np.log(np.arange(1, order + 1, dtype=np.float64))
    amp = w * np.exp(-sigma * logk)
    phase = np.exp(-1j * np.outer(ts, logk))
    return phase @ amp


def _nearest_exceptional(s: complex) -> tuple[int, float]:
    k = round(s.imag / EXCEPTIONAL_SPACING)
    if k == 0:
        return 0, math.inf
    return k, abs(s - complex(1.0, k * EXCEPTIONAL_SPACING))


def bridge_factor(s: complex) -> complex:
    """The eta-to-zeta conversion factor 1 - 2**(1-s)."""
    return 1.0 - cmath.exp((1.0 - s) * math.log(2.0))


def zeta(s: complex) -> EvalResult:
    """Riemann zeta via the alternating-series bridge, for re(s) > 0.

    Raises:
        PoleError: exactly at s = 1.
        ExceptionalPointError: within EXCEPTIONAL_RADIUS of a zero of the
            bridge factor with k != 0; use zeta_at_exceptional there.
        DomainError: if re(s) <= 0.
    """
    s = _require_point(s)
    if s == 1:
        raise PoleError("zeta has its pole at s = 1")
    k, dist = _nearest_exceptional(s)
    if dist < EXCEPTIONAL_RADIUS:
        raise ExceptionalPointError(
            f"s = {s} is within {EXCEPTIONAL_RADIUS:g} of the exceptional "
            f"point 1 + {k}*2*pi*i/log(2); use zeta_at_exceptional({k})",
            k=k,
        )
    base = eta(s)
    factor = bridge_factor(s)
    value = base.value / factor
    estimate = base.error_estimate / abs(factor) + 4.0 * np.finfo(float).eps * abs(value)
    return EvalResult(value, estimate, base.terms_used)


def zeta_at_exceptional(k: int) -> EvalResult:
    """zeta at the exceptional point s = 1 + 2*pi*i*k/log(2), k != 0.

    Both eta and the bridge factor vanish there, so zeta continues to
    eta'(s) / log(2).  The derivative is a central difference with step
    1e-5 refined by one Richardson extrapolation.
    """
    if k == 0:
        raise PoleError("k = 0 is the pole at s = 1, not an exceptional point")
    s0 = complex(1.0, k * EXCEPTIONAL_SPACING)
    h = 1e-5
    terms = 0

    def diff(step: float) -> complex:
        nonlocal terms
        hi = eta(s0 + step)
        lo = eta(s0 - step)
        terms += hi.terms_used + lo.terms_used
        return (hi.value - lo.value) / (2.0 * step)

    d1 = diff(h)
    d2 = diff(h / 2.0)
    derivative = (4.0 * d2 - d1) / 3.0
    ln2 = math.log(2.0)
    value = derivative / ln2
    # Richardson defect plus finite-difference amplification of eta noise.
    estimate = (abs(d2 - d1) / 3.0 + 1e-15 / h) / ln2
    return EvalResult(value, estimate, terms)


def _primes_up_to(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def euler_product_partial(s: complex, p_max: int) -> complex:
    """Product of (1 - p**(-s))**(-1) over primes p <= p_max.

    Only meaningful where the product converges, so re(s) > 1 is required.
    """
    s = _require_point(s)
    if s.real <= 1.0:
        raise DomainError(f"Euler product requires re(s) > 1, got {s}")
    if p_max < 2:
        raise InvalidBoundError(f"p_max must be at least 2, got {p_max}")
    primes = _primes_up_to(p_max).astype(np.float64)
    factors = 1.0 / (1.0 - np.exp(-s * np.log(primes)))
    return complex(np.prod(factors))


def lambda_series_partial(s: complex, M: int, table: ArithmeticTable) -> complex:
    """Partial sum of liouville(m) / m**s for m <= M.

    A finite sum, evaluated for any finite s; the full series converges
    only for re(s) > 1, so results deeper in the strip are exploratory.
    Summation is chunked with a fixed chunk size and pairwise reduction
    inside each chunk, making the result reproducible bit for bit.
    """
    s = _require_point(s)
    if M < 1:
        raise InvalidBoundError(f"M must be at least 1, got {M}")
    if M > table.n_max:
        raise TableRangeError(f"M = {M} exceeds table bound {table.n_max}")
    lam = table.liouville
    pieces = []
    for lo in range(1, M + 1, _SERIES_CHUNK):
        hi = min(lo + _SERIES_CHUNK - 1, M)
        m = np.arange(lo, hi + 1, dtype=np.float64)
        pieces.append(complex(np.sum(lam[lo : hi + 1] * np.exp(-s * np.log(m)))))
    total = 0j
    for piece in pieces:
        total += piece
    return total


def beta_series_partial(s: complex, K: int) -> complex:
    """Partial sum of the sparse signed-square series.

    The series runs over the support of the divisor transform: +1 at each
    square k*k and -2 at each twice-square 2*k*k.  Both families are
    truncated at square-root index K and the terms are added in increasing
    order of the underlying index n, matching how the series is written
    out term by term.
    """
    s = _require_point(s)
    if s.real <= 0.0:
        raise DomainError(f"series requires re(s) > 0, got {s}")
    if K < 1:
        raise InvalidBoundError(f"K must be at least 1, got {K}")
    k = np.arange(1, K + 1, dtype=np.float64)
    kpow = np.exp(-2.0 * s * np.log(k))
    square_terms = kpow
    twice_terms = -2.0 * cmath.exp(-s * math.log(2.0)) * kpow
    n_square = k * k
    n_twice = 2.0 * k * k
    ns = np.concatenate([n_square, n_twice])
    terms = np.concatenate([square_terms, twice_terms])
    order = np.argsort(ns, kind="stable")
    return complex(np.sum(terms[order]))
