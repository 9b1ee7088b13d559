"""
Certificates that the two generators of the function field of X(N) have
trivial stabilizer in SL2(Z)/+-Gamma(N), and that zeta_N times each generator
is moved by the Galois part diag(1, d).
"""
import logging
import math

from exactnum.backend import format_rational
from exactnum.cyclotomic import CycloElem
from exactnum.errors import UsageError
from famgroup.family import siegel_generator, galois_conjugate_series, act_F3
from famgroup.matrices import MatModN, cosets_mod_pm_gamma
from modforms.fricke import fricke_series
from modforms.indices import IndexVector
from modforms.siegel import siegel_order
from qseries.series import Distinct, distinctness_certificate, apply_sigma

log = logging.getLogger(__name__)

S = (0, -1, 1, 0)


class StabilizerEntry:
    """
    One checked group element.

    Attributes:
        element (MatModN): gamma, or diag(1, d) for the rational-field check.
        certificate (Distinct | UndecidedToPrecision): h^gamma against h.
        ord_pair (tuple | None): (ord h^gamma, ord h^(gamma S)) for the Siegel generator.
    """

    def __init__(self, element, certificate, ord_pair=None):
        self.element = element
        self.certificate = certificate
        self.ord_pair = ord_pair

    def to_json(self):
        data = {"element": str(self.element), "certificate": self.certificate.to_json()}
        if self.ord_pair is not None:
            data["ord_pair"] = [format_rational(o) for o in self.ord_pair]
        return data


class StabilizerReport:
    """
    Verdict over every non-identity element of the checked set.

    Attributes:
        verdict (str): TRIVIAL or UNDECIDED.
        entries (list): StabilizerEntry per element, in coset order.
        ord_pairs_separate (bool | None): Whether every non-identity coset has an
            ord pair different from the identity's (Siegel generator only).
    """

    TRIVIAL = "TrivialStabilizer"
    UNDECIDED = "Undecided"

    def __init__(self, kind, level, trunc, entries, n=None, ord_pairs_separate=None):
        self.kind = kind
        self.level = level
        self.trunc = trunc
        self.n = n
        self.entries = entries
        self.ord_pairs_separate = ord_pairs_separate
        decided = all(isinstance(e.certificate, Distinct) for e in entries)
        self.verdict = self.TRIVIAL if decided else self.UNDECIDED

    @property
    def affirmative(self):
        return self.verdict == self.TRIVIAL

    def undecided(self):
        return [e for e in self.entries if not isinstance(e.certificate, Distinct)]

    def to_json(self):
        data = {
            "kind": self.kind,
            "level": self.level,
            "trunc": format_rational(self.trunc),
            "verdict": self.verdict,
            "entries": [e.to_json() for e in self.entries],
        }
        if self.n is not None:
            data["n"] = self.n
        if self.ord_pairs_separate is not None:
            data["ord_pairs_separate"] = self.ord_pairs_separate
        return data


def _check_level(N, max_level):
    if N < 2 or N > max_level:
        raise UsageError(f"stabilizer checks run for 2 <= N <= {max_level}, got {N}")


def fricke_lambda(N, gamma, T):
    """lambda^gamma = f_{[a/N,b/N]} - 1/f_{[c/N,d/N]} for gamma = [a,b;c,d]."""
    first = act_F3(IndexVector(1, 0, N), gamma)
    second = act_F3(IndexVector(0, 1, N), gamma)
    return fricke_series(first, T) - 1 / fricke_series(second, T)


def stabilizer_check_fricke(N, T, max_level=7):
    """
    Certifies lambda^gamma != lambda for every non-identity coset gamma.
    """
    _check_level(N, max_level)
    identity, *rest = cosets_mod_pm_gamma(N)
    lam = fricke_lambda(N, identity, T)
    entries = [StabilizerEntry(gamma, distinctness_certificate(fricke_lambda(N, gamma, T), lam))
               for gamma in rest]
    report = StabilizerReport("fricke", N, T, entries)
    log.info("fricke generator, level %d: %s over %d cosets", N, report.verdict, len(entries))
    return report


def generator_orders(N, n, gamma):
    """ord_q(g^gamma) = 6Nn B2(<a/N>) + 12Nn B2(<c/N>) for gamma = [a,b;c,d]."""
    F = siegel_generator(N, n)
    base = IndexVector(1, 0, N)
    return sum(siegel_order(act_F3(base.transformed(*t), gamma), m) for t, m in F.factors)


def stabilizer_check_siegel(N, n, T, max_level=7):
    """
    Certifies g^gamma != g for every non-identity coset, and tabulates the ord
    pairs (ord g^gamma, ord g^(gamma S)) used by the order-based argument.

    Raises:
        UsageError: for n = 0.
    """
    _check_level(N, max_level)
    if n == 0:
        raise UsageError("n must be a nonzero integer")
    F = siegel_generator(N, n)
    base = IndexVector(1, 0, N)
    rotation = MatModN(*S, N)
    identity, *rest = cosets_mod_pm_gamma(N)
    g = galois_conjugate_series(F, base, identity, T)

    def ord_pair(gamma):
        return (generator_orders(N, n, gamma), generator_orders(N, n, gamma * rotation))

    base_pair = ord_pair(identity)
    entries = []
    for gamma in rest:
        conj = galois_conjugate_series(F, base, gamma, T)
        entries.append(StabilizerEntry(gamma, distinctness_certificate(conj, g), ord_pair(gamma)))
    separate = all(e.ord_pair != base_pair for e in entries)
    report = StabilizerReport("siegel", N, T, entries, n=n, ord_pairs_separate=separate)
    log.info("siegel generator, level %d, n=%d: %s over %d cosets (ord pairs separate: %s)",
             N, n, report.verdict, len(entries), separate)
    return report


def _generator_series(kind, N, n, T):
    if kind == "fricke":
        return fricke_lambda(N, MatModN.identity(N), T)
    if kind == "siegel":
        if n == 0:
            raise UsageError("n must be a nonzero integer")
        return galois_conjugate_series(siegel_generator(N, n), IndexVector(1, 0, N), MatModN.identity(N), T)
    raise UsageError(f"unknown generator kind {kind!r}")


def stabilizer_check_rational(kind, N, n, T, max_level=7):
    """
    Certifies that diag(1, d) moves zeta_N h for every unit d != 1 mod N, where h
    is the Fricke or Siegel generator; the action is sigma_d on coefficients.
    """
    _check_level(N, max_level)
    h = _generator_series(kind, N, n, T) * CycloElem.zeta(N, 1)
    entries = []
    for d in range(2, N + 1):
        if math.gcd(d, N) != 1 or d % N == 1:
            continue
        moved = apply_sigma(h, d)
        entries.append(StabilizerEntry(MatModN.diag(d, N), distinctness_certificate(moved, h)))
    report = StabilizerReport(f"{kind}-rational", N, T, entries, n=n if kind == "siegel" else None)
    log.info("%s generator times zeta_%d: %s over %d units", kind, N, report.verdict, len(entries))
    return report


def stabilizer_check_pair(F, T, max_level=7):
    """
    Certifies that no non-identity coset fixes both h_{[1/N,0]} and h_{[0,1/N]}.
    """
    N = F.level
    _check_level(N, max_level)
    first, second = IndexVector(1, 0, N), IndexVector(0, 1, N)
    identity, *rest = cosets_mod_pm_gamma(N)
    h1 = galois_conjugate_series(F, first, identity, T)
    h2 = galois_conjugate_series(F, second, identity, T)
    entries = []
    for gamma in rest:
        cert = distinctness_certificate(galois_conjugate_series(F, first, gamma, T), h1)
        if not isinstance(cert, Distinct):
            cert = distinctness_certificate(galois_conjugate_series(F, second, gamma, T), h2)
        entries.append(StabilizerEntry(gamma, cert))
    report = StabilizerReport(f"{F.label()}-pair", N, T, entries)
    log.info("%s pair, level %d: %s", F.label(), N, report.verdict)
    return report

