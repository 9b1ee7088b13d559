import functools
import logging

from .eisenstein import e4e6_over_delta, trunc_slots
from .weierstrass import wp_norm_series

log = logging.getLogger(__name__)


@functools.lru_cache(maxsize=256)
def fricke_series(v, T):
    """
    The Fricke function f_v = -2^7 3^5 (g2 g3 / Delta) wp(v1 tau + v2), as 12 E4 E6 wp / Delta.

    Its leading term is 12 * (constant of wp) * q^-1, so ord_q(f_v) = -1.

    Args:
        v (IndexVector): Index in (1/N)Z^2 \\ Z^2.
        T (int): Truncation in q-units.

    Returns:
        FracQSeries: cyclo_order N, exp_den N, trunc T.
    """
    T = trunc_slots(T)
    log.debug("fricke %s to trunc %d", v, T)
    return 12 * (e4e6_over_delta(T) * wp_norm_series(v, T + 1))
