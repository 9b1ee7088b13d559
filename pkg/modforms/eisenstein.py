"""
Level-one series with integer coefficients: E4, E6, Delta_norm and j.

All constructors take the truncation T (in q-units) of the result and are
cached per T; cached series are immutable and may be shared freely.
"""
import functools
import logging
import math

import numpy as np

from exactnum.backend import rational
from exactnum.errors import UsageError
from qseries.series import FracQSeries, series_pow, series_inv, series_mul

log = logging.getLogger(__name__)


def trunc_slots(T):
    """Integer truncation covering T q-units."""
    T = rational(T)
    slots = math.ceil(T)
    if slots < 1:
        raise UsageError(f"truncation must be at least 1, got {T}")
    return int(slots)


def divisor_sums(k, count):
    """
    sigma_k(n) for 0 <= n < count, by sieve (sigma_k(0) is 0).

    Returns:
        list: Python integers.
    """
    sums = np.zeros(count, dtype=object)
    for d in range(1, count):
        sums[d::d] += d ** k
    return [int(s) for s in sums]


def _eisenstein(k, factor, T):
    sums = divisor_sums(k, T)
    coeffs = [1] + [factor * s for s in sums[1:]]
    return FracQSeries.from_int_coeffs(coeffs, T)


@functools.lru_cache(maxsize=64)
def e4_series(T):
    """E4 = 1 + 240 sum sigma_3(n) q^n."""
    return _eisenstein(3, 240, trunc_slots(T))


@functools.lru_cache(maxsize=64)
def e6_series(T):
    """E6 = 1 - 504 sum sigma_5(n) q^n."""
    return _eisenstein(5, -504, trunc_slots(T))


def euler_product(T):
    """prod_{n>=1} (1 - q^n) to trunc T, through the pentagonal number theorem."""
    coeffs = [0] * T
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= T:
            break
        coeffs[e1] += sign
        if k and e2 < T:
            coeffs[e2] += sign
        k += 1
    return FracQSeries.from_int_coeffs(coeffs, T)


@functools.lru_cache(maxsize=64)
def delta_norm_series(T):
    """Delta_norm = q prod (1 - q^n)^24."""
    T = trunc_slots(T)
    if T == 1:
        return FracQSeries.zero(1)
    return series_pow(euler_product(T - 1), 24).shifted(1)


@functools.lru_cache(maxsize=64)
def j_series(T):
    """j = E4^3 / Delta_norm = q^-1 + 744 + 196884 q + ..."""
    T = trunc_slots(T)
    log.debug("building j to trunc %d", T)
    return series_mul(series_pow(e4_series(T + 1), 3), series_inv(delta_norm_series(T + 2)))


@functools.lru_cache(maxsize=64)
def e4e6_over_delta(T):
    """E4 E6 / Delta_norm, the level-one factor of every Fricke function."""
    T = trunc_slots(T)
    return series_mul(series_mul(e4_series(T + 1), e6_series(T + 1)), series_inv(delta_norm_series(T + 2)))


LEVEL_ONE = {
    "j": j_series,
    "e4": e4_series,
    "e6": e6_series,
    "delta": delta_norm_series,
}
