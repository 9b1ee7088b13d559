"""
Numerical values of family members at tau_K and their conjugates under W_{K,N}.

Siegel members are evaluated from the product formula (phase, q-power and the
convergent infinite product); other members from their q-expansions, with a
tail bound |q|^(T - ord) relative to the leading term.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import mpmath

from exactnum.backend import numerator, denominator
from exactnum.errors import UsageError, PrecisionError, ZeroValueError
from famgroup.family import family_series, act_F3
from modforms.bernoulli import bernoulli2
from modforms.indices import IndexVector
from modforms.siegel import siegel_phase

from .reciprocity import reciprocity_group

log = logging.getLogger(__name__)


def _mpf(x):
    return mpmath.mpf(numerator(x)) / denominator(x)


def eval_series_at_cm(series, tau, prec_bits=128):
    """
    Sums a q-series at q^(1/D) = e^(2 pi i tau / D).

    Returns:
        tuple: (value, relative tail bound |q|^(trunc - ord)).
    """
    with mpmath.workprec(prec_bits):
        D = series.exp_den
        root = mpmath.expjpi(2 * tau / D)
        total = mpmath.mpc(0)
        for e, c in series.terms.items():
            total += c.embed(prec_bits) * root ** int(e * D)
        q_abs = abs(mpmath.expjpi(2 * tau))
        order = series.ord_q()
        depth = series.trunc - (0 if order.zero_to_precision else order.value)
        return total, q_abs ** _mpf(depth)


def siegel_value(v, tau, prec_bits=128):
    """
    g_v(tau) = e(phase) q^(B2(v1)/2) (1 - q_z) prod_{n>=1} (1 - q^n q_z)(1 - q^n / q_z), q_z = e(v1 tau + v2).
    """
    v1, v2 = v.components()
    with mpmath.workprec(prec_bits + 16):
        x1, x2 = _mpf(v1), _mpf(v2)
        q = mpmath.expjpi(2 * tau)
        qz = mpmath.expjpi(2 * (x1 * tau + x2))
        eps = mpmath.mpf(2) ** (-prec_bits - 8)
        product = 1 - qz
        qn = q
        while abs(qn) * max(abs(qz), abs(1 / qz)) > eps:
            product *= (1 - qn * qz) * (1 - qn / qz)
            qn *= q
        phase = mpmath.expjpi(2 * _mpf(siegel_phase(v)))
        qpow = mpmath.expjpi(2 * _mpf(bernoulli2(v1) / 2) * tau)
        return +(phase * qpow * product)


def j_by_products(tau, prec_bits=128):
    """E4(tau)^3 / Delta_norm(tau) from Lambert sums and the product for Delta."""
    with mpmath.workprec(prec_bits + 16):
        q = mpmath.expjpi(2 * tau)
        eps = mpmath.mpf(2) ** (-prec_bits - 8)
        lambert = mpmath.mpc(0)
        product = mpmath.mpc(1)
        qn, n = q, 1
        while abs(qn) > eps:
            lambert += n ** 3 * qn / (1 - qn)
            product *= 1 - qn
            qn *= q
            n += 1
        e4 = 1 + 240 * lambert
        return +(e4 ** 3 / (q * product ** 24))


def _member_value(F, indices, K, prec_bits, T, tol):
    """h at tau_K for the conjugate given by its (factor) indices."""
    with mpmath.workprec(prec_bits):
        tau = K.tau(prec_bits)
        if F.kind == F.SIEGEL:
            return siegel_value(indices[0], tau, prec_bits) ** F.exponent
        if F.kind == F.PRODUCT:
            value = mpmath.mpc(1)
            for u, (_, m) in zip(indices, F.factors):
                value *= siegel_value(u, tau, prec_bits) ** m
            return value
        value, tail = eval_series_at_cm(family_series(F, indices[0], T), tau, prec_bits)
        if tol is not None and tail > tol:
            raise PrecisionError(f"tail bound {mpmath.nstr(tail, 5)} exceeds {tol}; raise T")
        return value


def _indices(F, v, alpha):
    if F.kind == F.PRODUCT:
        return [act_F3(v.transformed(*t), alpha) for t, _ in F.factors]
    return [act_F3(v, alpha)]


def eval_at_cm(F, v, K, prec_bits=128, T=60, tol=None):
    """
    h_v(tau_K) for the member v of F.

    Raises:
        PrecisionError: when the series tail bound exceeds tol.
    """
    if F.kind == F.PRODUCT:
        indices = [v.transformed(*t) for t, _ in F.factors]
    else:
        indices = [v]
    return _member_value(F, indices, K, prec_bits, T, tol)


class CMReport:
    """
    Conjugates h_{[s/N,t/N]}(tau_K)^n over W_{K,N}/+-, sorted by (s, t).

    Attributes:
        values (list): mpc per conjugate.
        pairs (list): (s, t) per conjugate.
        min_distance: Smallest pairwise distance (None for a single conjugate).
        distinct (bool): Pairwise separated beyond tol relative to the larger modulus.
        residuals (list | None): Distance of each coefficient of prod (x - value) from Z + Z tau_K.
        near_integral (bool | None): Every residual below the integrality tolerance.
        notes (list): Human-readable caveats.
    """

    def __init__(self, field, level, family, n, pairs, values, min_distance, distinct,
                 residuals=None, near_integral=None, notes=()):
        self.field = field
        self.level = level
        self.family = family
        self.n = n
        self.pairs = pairs
        self.values = values
        self.min_distance = min_distance
        self.distinct = distinct
        self.residuals = residuals
        self.near_integral = near_integral
        self.notes = list(notes)

    DISTINCT = "Distinct"
    COINCIDENT = "Coincident"
    NOT_INTEGRAL = "NotIntegral"

    @property
    def verdict(self):
        if not self.distinct:
            return self.COINCIDENT
        if self.near_integral is False:
            return self.NOT_INTEGRAL
        return self.DISTINCT

    @property
    def affirmative(self):
        return self.verdict == self.DISTINCT

    def to_json(self):
        def num(x):
            return mpmath.nstr(x, 20)

        return {
            "kind": "CMReport",
            "field": self.field.to_json(),
            "level": self.level,
            "family": self.family,
            "n": self.n,
            "verdict": self.verdict,
            "conjugates": [{"s": s, "t": t, "re": num(z.real), "im": num(z.imag)}
                           for (s, t), z in zip(self.pairs, self.values)],
            "min_distance": None if self.min_distance is None else num(self.min_distance),
            "distinct": self.distinct,
            "residuals": None if self.residuals is None else [num(r) for r in self.residuals],
            "near_integral": self.near_integral,
            "notes": self.notes,
        }


def poly_from_roots(values):
    """Coefficients of prod (x - value), constant term first."""
    coeffs = [mpmath.mpc(1)]
    for z in values:
        shifted = [mpmath.mpc(0)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= z * c
        coeffs = shifted
    return coeffs


def lattice_residual(c, tau):
    """|c - (m1 + m2 tau)| for the nearest lattice point found by rounding."""
    m2 = c.imag / tau.imag
    m1 = c.real - m2 * tau.real
    return abs(c - (mpmath.nint(m1) + mpmath.nint(m2) * tau))


def cm_conjugates(F, v, n, K, N, prec_bits=128, T=60, tol=1e-6, integrality_tol=1e-4,
                  zero_tol=1e-30, workers=1):
    """
    Evaluates the conjugates h_{gamma^T v}(tau_K)^n over gamma in W_{K,N}/+-.

    Raises:
        UsageError: for d_K in {-3, -4} or a level mismatch.
        ZeroValueError: if a member value is below zero_tol.
    """
    if K.d_K in (-3, -4):
        raise UsageError(f"d_K = {K.d_K}: Q(sqrt(-1)) and Q(sqrt(-3)) are excluded")
    if F.level != N:
        raise UsageError(f"family has level {F.level}, requested N = {N}")
    if n == 0:
        raise UsageError("n must be nonzero")
    if v is None:
        v = IndexVector(0, 1, N)
    group = reciprocity_group(K, N)
    pairs = group.pm_pairs()
    log.info("d_K=%d, N=%d: %d conjugates of %s", K.d_K, N, len(pairs), F.label())

    def conjugate(gamma):
        return _member_value(F, _indices(F, v, gamma), K, prec_bits, T, tol)

    # mpmath's precision is process-wide: threads restore each other's workprec,
    # so the pool runs under the highest precision any member evaluation sets
    with mpmath.workprec(prec_bits + 16), ThreadPoolExecutor(max_workers=workers) as pool:
        raw = list(pool.map(conjugate, group.pm_classes))
    notes = []
    with mpmath.workprec(prec_bits):
        for (s, t), z in zip(pairs, raw):
            if abs(z) < zero_tol:
                raise ZeroValueError(f"h at [{s}/{N},{t}/{N}] vanishes at tau_K to {zero_tol}")
        values = [z ** n for z in raw]
        min_distance, distinct = None, True
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                gap = abs(values[i] - values[j])
                if min_distance is None or gap < min_distance:
                    min_distance = gap
                if gap <= tol * max(1, abs(values[i]), abs(values[j])):
                    distinct = False
        if not distinct:
            notes.append("coincident conjugates: K may lie in the exceptional set, or precision is too low")
        residuals = near_integral = None
        if K.class_number == 1 and n > 0:
            tau = K.tau(prec_bits)
            residuals = [lattice_residual(c, tau) for c in poly_from_roots(values)[:-1]]
            near_integral = all(r < integrality_tol for r in residuals)
        elif K.class_number != 1:
            notes.append(f"class number {K.class_number}: coefficients lie outside K, integrality not tested")
    return CMReport(K, N, F.label(), n, pairs, values, min_distance, distinct, residuals, near_integral, notes)
