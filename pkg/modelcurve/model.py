"""
The plane model f_N(x, y) in Z[x, y] with f_N(g, j) = 0, monic in x, for the
generator g = g_{[1/N,0]}^(12Nn) g_{[0,1/N]}^(24Nn).

f_N is prod_gamma (x - g^gamma) over SL2(Z)/+-Gamma(N); each elementary
symmetric function of the orbit is level-one and integral over Z[j], so it
j-reduces to an integer polynomial in y = j.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import mpmath
import sympy

from exactnum.errors import UsageError, ConsistencyError, NotAJPolynomialError
from famgroup.family import siegel_generator, galois_conjugate_series, act_F3
from famgroup.matrices import cosets_mod_pm_gamma
from modforms.eisenstein import j_series
from modforms.indices import IndexVector
from modforms.siegel import siegel_order
from qseries.series import distinctness_certificate, Distinct

from .jreduce import j_reduce

log = logging.getLogger(__name__)


def _int_text(c):
    """Positive integer as a product of prime powers, "2^8*3^2"."""
    if c == 1:
        return "1"
    return "*".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in sorted(sympy.factorint(c).items()))


def _power(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _monomial(c, var_part):
    """(negative, body) of c * var_part."""
    magnitude = abs(c)
    if not var_part:
        body = _int_text(magnitude)
    elif magnitude == 1:
        body = var_part
    else:
        body = f"{_int_text(magnitude)}*{var_part}"
    return c < 0, body


def _join(parts):
    negative, body = parts[0]
    text = ("-" if negative else "") + body
    for negative, body in parts[1:]:
        text += (" - " if negative else " + ") + body
    return text


class BivarIntPoly:
    """
    Polynomial in Z[x, y] as a map (x-degree, y-degree) -> int without zero entries.
    """

    def __init__(self, coeffs):
        self.coeffs = {(int(i), int(k)): int(c) for (i, k), c in coeffs.items() if c}

    @property
    def x_degree(self):
        return max((i for i, _ in self.coeffs), default=0)

    def y_degree(self, i=None):
        return max((k for (xi, k) in self.coeffs if i is None or xi == i), default=0)

    def coefficient(self, i, k):
        return self.coeffs.get((i, k), 0)

    def x_coefficient(self, i):
        """The coefficient of x^i as {y-degree: int}."""
        return {k: c for (xi, k), c in self.coeffs.items() if xi == i}

    def is_monic_in_x(self):
        return self.x_coefficient(self.x_degree) == {0: 1}

    def render(self, sep=" "):
        """
        y-grouped text, highest x power first, integers factored:
        "x^6 + (-2*y^3 + 2^8*3^2*y^2 + ...)*x^5 + ... + 2^144".
        """
        groups = []
        for i in range(self.x_degree, -1, -1):
            row = self.x_coefficient(i)
            if not row:
                continue
            xpart = _power("x", i)
            terms = [_monomial(row[k], _power("y", k)) for k in sorted(row, reverse=True)]
            if len(terms) == 1:
                negative, body = terms[0]
                if xpart:
                    body = xpart if body == "1" else f"{body}*{xpart}"
                groups.append((negative, body))
            else:
                body = f"({_join(terms)})"
                groups.append((False, f"{body}*{xpart}" if xpart else body))
        if not groups:
            return "0"
        negative, body = groups[0]
        text = ("-" if negative else "") + body
        for negative, body in groups[1:]:
            text += sep + ("- " if negative else "+ ") + body
        return text

    def to_json(self):
        return {f"{i},{k}": str(c) for (i, k), c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data):
        out = {}
        for key, value in data.items():
            i, k = key.split(",")
            out[(int(i), int(k))] = int(value)
        return cls(out)

    def evaluate(self, x, y, prec_bits=128):
        with mpmath.workprec(prec_bits):
            return mpmath.fsum(c * mpmath.mpc(x) ** i * mpmath.mpc(y) ** k
                               for (i, k), c in self.coeffs.items())

    def relative_residual(self, x, y, prec_bits=128):
        """|f(x, y)| divided by the largest monomial |c x^i y^k|."""
        with mpmath.workprec(prec_bits):
            x, y = mpmath.mpc(x), mpmath.mpc(y)
            largest = max(abs(c * x ** i * y ** k) for (i, k), c in self.coeffs.items())
            return abs(self.evaluate(x, y, prec_bits)) / largest

    def evaluate_series(self, g, j):
        """f(g, j) for q-series g and j."""
        g_powers, j_powers = {0: None}, {0: None}
        result = None
        for (i, k), c in sorted(self.coeffs.items()):
            term = None
            for base, powers, e in ((g, g_powers, i), (j, j_powers, k)):
                if e == 0:
                    continue
                if e not in powers:
                    powers[e] = base ** e
                term = powers[e] if term is None else term * powers[e]
            if term is None:
                term = g ** 0
            term = term * c
            result = term if result is None else result + term
        return result

    def __eq__(self, other):
        return isinstance(other, BivarIntPoly) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"BivarIntPoly({self.render()})"


def _check_n(n):
    if n == 0:
        raise UsageError("n must be a nonzero integer")


def orbit_orders(N, n):
    """ord_q(g^gamma) per coset, from the Siegel order formula."""
    F = siegel_generator(N, n)
    base = IndexVector(1, 0, N)
    return [sum(siegel_order(act_F3(base.transformed(*t), gamma), m) for t, m in F.factors)
            for gamma in cosets_mod_pm_gamma(N)]


def required_precision(N, n, margin=8):
    """(coset count) * (max pole order in the orbit) + margin, in q-units."""
    orders = orbit_orders(N, n)
    deepest = max([-o for o in orders if o < 0], default=0)
    return len(orders) * int(math.ceil(deepest)) + margin


def conjugate_orbit(F, N, n, T, workers=1):
    """
    The series g^gamma for every gamma in cosets_mod_pm_gamma(N), in coset order.

    Args:
        F (FamilyDescriptor): The generator family; None builds siegel_generator(N, n).
    """
    _check_n(n)
    if F is None:
        F = siegel_generator(N, n)
    base = IndexVector(1, 0, N)
    cosets = cosets_mod_pm_gamma(N)
    log.info("orbit of %s: %d cosets to trunc %s", F.label(), len(cosets), T)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda gamma: galois_conjugate_series(F, base, gamma, T), cosets))


def orbit_is_representative_independent(N, n, T):
    """
    True when replacing each coset representative gamma by -gamma yields the same series.
    """
    F = siegel_generator(N, n)
    base = IndexVector(1, 0, N)
    for gamma in cosets_mod_pm_gamma(N):
        a = galois_conjugate_series(F, base, gamma, T)
        b = galois_conjugate_series(F, base, -gamma, T)
        if isinstance(distinctness_certificate(a, b), Distinct):
            return False
    return True


def elementary_symmetric(series):
    """[e_0, e_1, ..., e_n] of the given series; e_0 is the integer 1."""
    e = [1]
    for s in series:
        e.append(e[-1] * s)
        for k in range(len(e) - 2, 0, -1):
            e[k] = e[k] + e[k - 1] * s
    return e


def _model_at(N, n, T, margin, workers):
    orders = orbit_orders(N, n)
    required = required_precision(N, n, margin)
    T = max(T or 0, required)
    member_trunc = T + sum(int(math.ceil(-o)) for o in orders if o < 0)
    orbit = conjugate_orbit(None, N, n, member_trunc, workers)
    e = elementary_symmetric(orbit)
    size = len(orbit)
    coeffs = {(size, 0): 1}
    for k in range(1, size + 1):
        s = e[k]
        if not s.is_rational():
            raise ConsistencyError(f"e_{k} of the orbit keeps a cyclotomic part")
        poly = j_reduce(s.as_rational().with_min_exp_den(), T)
        sign = -1 if k % 2 else 1
        for y_deg, c in enumerate(poly.integer_coeffs()):
            if c:
                coeffs[(size - k, y_deg)] = sign * c
        log.debug("x^%d coefficient has y-degree %d", size - k, poly.degree)
    model = BivarIntPoly(coeffs)
    g = orbit[0]
    residual = model.evaluate_series(g, j_series(T + model.y_degree()))
    if not residual.is_zero_to_precision():
        raise ConsistencyError(f"f_{N}(g, j) leaves {residual!r}")
    log.info("model for N=%d, n=%d: x-degree %d, y-degree %d, verified to q^%s",
             N, n, model.x_degree, model.y_degree(), residual.trunc)
    return model


def model_polynomial(N, n, T=None, workers=1):
    """
    f_N(x, y) for the generator g at level N, power n > 0.

    The truncation is raised to the required precision; if the reduction still
    fails the margin is doubled once.

    Raises:
        UsageError: for n <= 0.
        NotAJPolynomialError: if the reduction fails after the retry.
        ConsistencyError: on surviving cyclotomic parts or non-integral coefficients.
    """
    if n <= 0:
        raise UsageError(f"the model needs n > 0 (integrality over Z[j]), got {n}")
    try:
        return _model_at(N, n, T, 8, workers)
    except NotAJPolynomialError as exc:
        log.warning("j-reduction failed (%s); retrying with a doubled margin", exc)
        return _model_at(N, n, T, 16, workers)
