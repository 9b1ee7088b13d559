"""
Siegel functions g_v(tau) as q-products.

For v = [a/N, b/N] reduced to [0, 1)^2,

    g_v = -e^(pi i v2 (v1 - 1)) q^(B2(v1)/2) (1 - q^v1 zeta^b) prod_{n>=1} (1 - q^(n+v1) zeta^b)(1 - q^(n-v1) zeta^-b)

A single g_v has a phase outside Q(zeta_N) in general, so it is kept
symbolically as a SiegelSymbol; the power g_v^m becomes an honest series in
Q(zeta_N)((q^(1/N))) once 12N divides m.
"""
import functools
import logging
import math

from exactnum.backend import rational, numerator, denominator, format_rational
from exactnum.cyclotomic import CycloElem
from exactnum.errors import UsageError

from qseries.series import FracQSeries, series_pow

from .accumulate import CyclicRows
from .bernoulli import bernoulli2, frac_part
from .eisenstein import trunc_slots

log = logging.getLogger(__name__)


class SiegelSymbol:
    """
    g_v^power = exp(2 pi i phase) * scalar * q^qexp * unit.

    Attributes:
        index (IndexVector): v.
        power (int): Exponent m.
        phase (rational): In [0, 1).
        qexp (rational): m B2(v1) / 2, the q-order.
        scalar (CycloElem): Constant in Q(zeta_N), 1 unless v1 = 0.
        unit (FracQSeries): Unit series with constant term 1.
    """

    def __init__(self, index, power, phase, qexp, scalar, unit):
        self.index = index
        self.power = power
        self.phase = phase
        self.qexp = qexp
        self.scalar = scalar
        self.unit = unit

    def raised(self, m):
        """Symbol of (g_v^power)^m."""
        return SiegelSymbol(self.index, self.power * m, frac_part(self.phase * m), self.qexp * m,
                            self.scalar ** m, series_pow(self.unit, m))

    def root_of_unity(self):
        """exp(2 pi i phase) as an element of the smallest cyclotomic field holding it."""
        den = denominator(self.phase)
        return CycloElem.zeta(den, numerator(self.phase))

    def to_series(self):
        """The symbol as a series; the phase must lie in (1/N)Z."""
        level = self.index.level
        if level % denominator(self.phase):
            raise UsageError(
                f"phase {format_rational(self.phase)} of g_{self.index}^{self.power} is not in Q(zeta_{level})")
        root = self.root_of_unity().lift(level)
        return self.unit.shifted(self.qexp) * (root * self.scalar)

    def __repr__(self):
        return (f"SiegelSymbol(g_{self.index}^{self.power}: e(phase={format_rational(self.phase)}), "
                f"q^{format_rational(self.qexp)})")


def siegel_phase(v):
    """Phase r with -e^(pi i v2 (v1 - 1)) = e^(2 pi i r)."""
    v1, v2 = v.components()
    return frac_part(rational(1, 2) + v2 * (v1 - 1) / 2)


def siegel_order(v, m=1):
    """ord_q(g_v^m) = m B2(<v1>) / 2."""
    v1, _ = v.components()
    return m * bernoulli2(frac_part(v1)) / 2


@functools.lru_cache(maxsize=512)
def siegel_unit(v, prec):
    """
    The product part of g_v to `prec` slots of width 1/N.

    Returns:
        tuple: (scalar CycloElem, unit FracQSeries with constant term 1).
    """
    n_lev = v.level
    a, b = v.a, v.b
    acc = CyclicRows(n_lev, prec)
    acc.add(0, 0, 1)
    # prec need not be a multiple of N; factors at or past the truncation are no-ops
    if a:
        scalar = CycloElem.one(n_lev)
        acc.times_binomial(a, b)
        for n in range(1, (prec + a - 1) // n_lev + 1):
            acc.times_binomial(n * n_lev + a, b)
            acc.times_binomial(n * n_lev - a, -b)
    else:
        scalar = 1 - CycloElem.zeta(n_lev, b)
        for n in range(1, (prec - 1) // n_lev + 1):
            acc.times_binomial(n * n_lev, b)
            acc.times_binomial(n * n_lev, -b)
    return scalar, acc.to_series()


def siegel_symbol(v, T, m=1):
    """
    g_v^m in symbolic form, the unit known to T q-units past the leading term.
    """
    T = trunc_slots(T)
    scalar, unit = siegel_unit(v, T * v.level)
    base = SiegelSymbol(v, 1, siegel_phase(v), siegel_order(v), scalar, unit)
    return base if m == 1 else base.raised(m)


@functools.lru_cache(maxsize=512)
def siegel_power_series(v, m, T):
    """
    g_v^m as a series in Q(zeta_N)((q^(1/N))) to trunc T.

    Raises:
        UsageError: unless 12N divides m.
    """
    n_lev = v.level
    if m % (12 * n_lev):
        raise UsageError(f"Siegel power {m} is not a multiple of 12N = {12 * n_lev}")
    T = rational(T)
    qexp = siegel_order(v, m)
    if T <= qexp:
        return FracQSeries.zero(T).with_order(n_lev)
    slots = int(math.ceil((T - qexp) * n_lev))
    scalar, unit = siegel_unit(v, slots)
    symbol = SiegelSymbol(v, 1, siegel_phase(v), siegel_order(v), scalar, unit).raised(m)
    log.debug("g_%s^%d to trunc %s", v, m, format_rational(T))
    return symbol.to_series().truncate(T)
