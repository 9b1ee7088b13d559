import functools
import logging

from exactnum.backend import rational
from exactnum.cyclotomic import CycloElem

from .accumulate import CyclicRows
from .eisenstein import divisor_sums, trunc_slots

log = logging.getLogger(__name__)


@functools.lru_cache(maxsize=256)
def wp_norm_series(v, T):
    """
    The normalized Weierstrass function wp(a/N tau + b/N; [tau, 1]) / (2 pi i)^2.

    Expansion used, with u = q^(a/N) zeta^b:

        1/12 + u/(1-u)^2 + sum_{n>=1} [q^n u/(1-q^n u)^2 + q^n u^-1/(1-q^n u^-1)^2 - 2 q^n/(1-q^n)^2]

    When a = 0 the u/(1-u)^2 term is the constant zeta^b/(1-zeta^b)^2.

    Args:
        v (IndexVector): The index, reduced to 0 <= a, b < N.
        T (int): Truncation in q-units.

    Returns:
        FracQSeries: cyclo_order N, exp_den N, trunc T.
    """
    T = trunc_slots(T)
    n_lev = v.level
    a, b = v.a, v.b
    prec = T * n_lev
    acc = CyclicRows(n_lev, prec)
    sigma1 = divisor_sums(1, T)
    for n in range(1, T):
        acc.add(n * n_lev, 0, -2 * sigma1[n])
    if a:
        # sum_k k u^k q^(nk) for n >= 0 and its mirror for n >= 1
        for n in range(T):
            base = n * n_lev + a
            for k in range(1, prec // base + 1):
                acc.add(k * base, b * k, k)
        # n = T still lands below the truncation: T N - a < T N
        for n in range(1, T + 1):
            base = n * n_lev - a
            for k in range(1, prec // base + 1):
                acc.add(k * base, -b * k, k)
    else:
        for n in range(1, T):
            base = n * n_lev
            for k in range(1, prec // base + 1):
                acc.add(k * base, b * k, k)
                acc.add(k * base, -b * k, k)
    series = acc.to_series()
    constant = CycloElem.from_rational(rational(1, 12), n_lev)
    if not a:
        z = CycloElem.zeta(n_lev, b)
        constant = constant + z / (1 - z) ** 2
    log.debug("wp for %s to trunc %d", v, T)
    return series + constant
