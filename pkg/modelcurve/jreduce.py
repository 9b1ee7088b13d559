import logging
import math

from exactnum.backend import format_rational, denominator, numerator, is_integral
from exactnum.cyclotomic import CycloElem
from exactnum.errors import NotAJPolynomialError, PrecisionError, ConsistencyError
from modforms.eisenstein import j_series
from qseries.series import series_pow

log = logging.getLogger(__name__)


class JPolynomial:
    """
    A polynomial sum c_k j^k with coefficients in a cyclotomic field.

    Attributes:
        coeffs (list): CycloElem per j-degree, lowest first.
    """

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_rational(self):
        return all(c.is_rational() for c in self.coeffs)

    def integer_coeffs(self):
        """
        Raises:
            ConsistencyError: if a coefficient is irrational or has a denominator.
        """
        out = []
        for k, c in enumerate(self.coeffs):
            if not c.is_rational():
                raise ConsistencyError(f"coefficient of j^{k} is irrational: {c.render()}")
            value = c.rational_value()
            if not is_integral(value):
                raise ConsistencyError(f"coefficient of j^{k} is not an integer: {format_rational(value)}")
            out.append(numerator(value))
        return out

    def evaluate(self, T):
        """The q-series of the polynomial with j expanded to trunc T."""
        result = None
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            term = _j_power(k, T + max(self.degree - 1, 0)) * c
            result = term if result is None else result + term
        if result is None:
            return j_series(T) * 0
        return result.truncate(T)

    def __eq__(self, other):
        if isinstance(other, JPolynomial):
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs))
        if isinstance(other, (list, tuple)):
            return self == JPolynomial([c if isinstance(c, CycloElem) else CycloElem.from_rational(c)
                                        for c in other])
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        terms = [f"({c.render()})*j^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return "JPolynomial(" + (" + ".join(terms) or "0") + ")"


def _j_power(k, T):
    if k == 0:
        return series_pow(j_series(T), 0).truncate(T)
    return series_pow(j_series(T), k)


def j_reduce(s, T=None):
    """
    Writes s as a polynomial in j by cancelling the principal part top-down.

    Args:
        s (FracQSeries): Series with integral exponents that is a polynomial in j.
        T (rational): Truncation the identity is verified to; defaults to s.trunc.

    Raises:
        PrecisionError: if s is known to less than T, or not past the constant term.
        NotAJPolynomialError: if a fractional or positive exponent survives the reduction.
    """
    if T is None:
        T = s.trunc
    if s.trunc < T:
        raise PrecisionError(f"series known to q^{format_rational(s.trunc)}, need {format_rational(T)}")
    if T <= 0:
        raise PrecisionError("j-reduction needs the constant term")
    s = s.truncate(T)
    order = s.ord_q()
    degree = 0 if order.zero_to_precision else max(-int(math.floor(order.value)), 0)
    j_trunc = int(math.ceil(T)) + degree
    field_order = s.cyclo_order
    coeffs = [CycloElem.zero(field_order) for _ in range(degree + 1)]
    residual = s
    while not residual.is_zero_to_precision():
        e = residual.ord_q().value
        if denominator(e) != 1:
            raise NotAJPolynomialError(f"fractional exponent {format_rational(e)} survives j-reduction")
        if e > 0:
            raise NotAJPolynomialError(
                f"residual term at q^{format_rational(e)} below trunc {format_rational(T)}")
        k = -numerator(e)
        c = residual.leading_coefficient()
        coeffs[k] = coeffs[k] + c
        residual = residual - _j_power(k, j_trunc) * c
    log.debug("j-reduced series of degree %d to trunc %s", degree, format_rational(T))
    return JPolynomial(coeffs)
