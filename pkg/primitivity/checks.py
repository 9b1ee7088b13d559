"""
Pairwise scans over V_N / +- deciding primitivity and total primitivity.

A Distinct certificate or a NonConstantRatio is a proof. Agreement of the
known coefficients is only agreement to precision, so a negative verdict is
issued solely when the identity is known exactly.
"""
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import sympy

from exactnum.errors import UsageError, PrecisionError, ConsistencyError
from famgroup.family import family_series, member_order
from famgroup.matrices import IndexClass, index_classes
from modforms.indices import IndexVector
from qseries.series import Distinct, distinctness_certificate

from .reports import (PrimitivityReport, TotalPrimitivityReport, PairResult, NonConstantRatio,
                      ConstantRatioCandidate, InconclusivePair)

log = logging.getLogger(__name__)


def root_of_unity_order(c, level):
    """
    Multiplicative order of c when c is a root of unity, else None.

    Every root of unity in Q(zeta_M) has order dividing lcm(2, M), so testing
    c^E = 1 for E = lcm(12 N^2, 2M) decides the question.
    """
    if c.is_zero():
        return None
    exponent = math.lcm(12 * level * level, 2 * c.order)
    if c ** exponent != 1:
        return None
    for d in sympy.divisors(exponent):
        if c ** d == 1:
            return d
    return exponent


def symbolic_ratio(F, u, v):
    """
    h_u / h_v when an exact identity is known, else None.

    For f_v - f_{av} with a^2 = +-1 mod N, h_{av} = f_{av} - f_{a^2 v} = f_{av} - f_v = -h_v.
    """
    if u.class_key() == v.class_key():
        return 1
    if F.kind == F.DIFF:
        if v.scaled(F.a).class_key() == u.class_key() or u.scaled(F.a).class_key() == v.class_key():
            return -1
    return None


def _pairs(F, orbit_reduction):
    classes = index_classes(F.level)
    if orbit_reduction and F.is_gl2_homogeneous():
        # GL2(Z/N) is transitive on V_N, so every pair is conjugate to one through [1/N, 0]
        base = IndexClass(IndexVector(1, 0, F.level))
        return [tuple(sorted((base, c))) for c in classes if c != base]
    return list(itertools.combinations(classes, 2))


def _check_level(F, max_level):
    if F.level > max_level:
        raise UsageError(f"level {F.level} exceeds the configured bound {max_level}")


def _members(F, classes, T, workers):
    classes = sorted(set(classes))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        series = list(pool.map(lambda c: family_series(F, c.representative, T), classes))
    return dict(zip(classes, series))


def _pair_members(F, T, orbit_reduction, workers):
    pairs = _pairs(F, orbit_reduction)
    log.info("%s level %d: scanning %d pairs to trunc %s", F.label(), F.level, len(pairs), T)
    members = _members(F, [c for pair in pairs for c in pair], T, workers)
    return pairs, members


def check_primitive(F, T, orbit_reduction=False, workers=1, max_level=12):
    """
    Certifies that h_u != h_v for every pair of distinct index classes.

    Returns:
        PrimitivityReport: Primitive when every pair has a Distinct certificate.
    """
    _check_level(F, max_level)
    pairs, members = _pair_members(F, T, orbit_reduction, workers)

    def examine(pair):
        u, v = pair
        return PairResult(u, v, distinctness_certificate(members[u], members[v]))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = sorted(pool.map(examine, pairs), key=PairResult.key)
    verdict, witness = PrimitivityReport.PRIMITIVE, None
    for result in results:
        if isinstance(result.certificate, Distinct):
            continue
        if symbolic_ratio(F, result.u.representative, result.v.representative) == 1:
            verdict, witness = PrimitivityReport.NOT_PRIMITIVE, result
            break
        verdict = PrimitivityReport.UNDECIDED
    report = PrimitivityReport(F.label(), F.level, T, verdict, results, witness)
    log.info("%s level %d: %s", F.label(), F.level, verdict)
    return report


def ratio_analysis(F, u, v, hu, hv):
    """Classifies h_u / h_v as non-constant, a constant candidate, or inconclusive."""
    if hu.is_zero_to_precision() or hv.is_zero_to_precision():
        which = u if hu.is_zero_to_precision() else v
        return InconclusivePair(f"member at {which} is zero to precision")
    ord_u, ord_v = hu.ord_q().value, hv.ord_q().value
    if ord_u != ord_v:
        return NonConstantRatio(ord_u - ord_v)
    lead_u, lead_v = hu.leading_coefficient(), hv.leading_coefficient()
    order = math.lcm(lead_u.order, lead_v.order)
    c = lead_u.lift(order) / lead_v.lift(order)
    rest = hu - hv * c
    if not rest.is_zero_to_precision():
        return NonConstantRatio(rest.ord_q().value - ord_v)
    exact = symbolic_ratio(F, u, v)
    return ConstantRatioCandidate(c, root_of_unity_order(c, F.level),
                                  proved=exact is not None and c == exact)


def check_totally_primitive(F, T, orbit_reduction=False, workers=1, max_level=12):
    """
    Certifies that no power of h_u equals the same power of h_v for distinct classes.

    Returns:
        TotalPrimitivityReport: TotallyPrimitive when every pair is resolved,
        NotTotallyPrimitive when a root-of-unity ratio is known exactly.
    """
    _check_level(F, max_level)
    pairs, members = _pair_members(F, T, orbit_reduction, workers)

    def examine(pair):
        u, v = pair
        hu, hv = members[u], members[v]
        ratio = ratio_analysis(F, u.representative, v.representative, hu, hv)
        return PairResult(u, v, distinctness_certificate(hu, hv), ratio)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = sorted(pool.map(examine, pairs), key=PairResult.key)
    verdict, witness = TotalPrimitivityReport.TOTALLY_PRIMITIVE, None
    for result in results:
        ratio = result.ratio
        if ratio.resolved:
            continue
        if isinstance(ratio, ConstantRatioCandidate) and ratio.proved:
            verdict, witness = TotalPrimitivityReport.NOT_TOTALLY_PRIMITIVE, result
            break
        verdict = TotalPrimitivityReport.UNDECIDED
    report = TotalPrimitivityReport(F.label(), F.level, T, verdict, results, witness)
    log.info("%s level %d: %s", F.label(), F.level, verdict)
    return report


def order_profile(F, v, T=None):
    """
    ord_q(h_v), read off the member's series.

    Raises:
        PrecisionError: if the member is zero to precision T.
        ConsistencyError: if a Siegel member disagrees with m B2(<v1>) / 2.
    """
    expected = member_order(F, v)
    if T is None:
        T = 8 if expected is None else max(int(math.floor(expected)) + 2, 1)
    series = family_series(F, v, T)
    if series.is_zero_to_precision():
        raise PrecisionError(f"member at {v} is zero to trunc {T}; raise T")
    order = series.ord_q().value
    if expected is not None and order != expected:
        raise ConsistencyError(f"ord_q of member at {v} is {order}, expected {expected}")
    return order
