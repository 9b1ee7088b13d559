"""
Exact arithmetic in the cyclotomic fields Q(zeta_M).

Elements are coefficient vectors in the power basis 1, z, ..., z^(phi(M)-1)
of Q[z]/(Phi_M), where z stands for zeta_M = exp(2*pi*i/M). Because the basis
is fixed, equality is coefficient-wise, and an element is rational exactly
when every coefficient after the constant one vanishes.
"""
import functools
import logging
import math
import re

import mpmath
import sympy
from sympy import QQ, Poly

from .backend import rational, numerator, denominator, format_rational
from .errors import UsageError, CycloZeroDivisionError

log = logging.getLogger(__name__)

_X = sympy.Symbol('x')
_TERM = re.compile(r'([+-]?)([^+-]+)')


class CycloField:
    """
    Reduction tables for Q(zeta_M).

    Attributes:
        order (int): M.
        degree (int): phi(M), the length of every coefficient vector.
        modulus (tuple): Coefficients of Phi_M, lowest degree first (monic).
        powers (tuple): powers[e] is the reduced integer vector of z^e, 0 <= e < M.
    """
    def __init__(self, order):
        if order < 1:
            raise UsageError(f"cyclotomic order must be positive, got {order}")
        self.order = order
        self.phi_poly = sympy.cyclotomic_poly(order, _X, polys=True).set_domain(QQ)
        self.modulus = tuple(int(c) for c in reversed(self.phi_poly.all_coeffs()))
        self.degree = len(self.modulus) - 1
        self.powers = self._power_table()

    def _power_table(self):
        phi = self.degree
        vec = [0] * phi
        vec[0] = 1
        table = []
        for _ in range(self.order):
            table.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(phi):
                    vec[i] -= top * self.modulus[i]
        return tuple(table)

    def reduce(self, coeffs):
        """
        Reduces a coefficient list of any length (index = power of z) modulo Phi_M.

        Works for integer and rational entries alike.
        """
        phi = self.degree
        out = list(coeffs[:phi])
        if len(out) < phi:
            out.extend([0] * (phi - len(out)))
        for j in range(phi, len(coeffs)):
            c = coeffs[j]
            if c:
                p = self.powers[j % self.order]
                for i in range(phi):
                    if p[i]:
                        out[i] += c * p[i]
        return out

    def combine(self, coeffs, table):
        """Returns sum(coeffs[i] * table[i]) for a table of reduced vectors."""
        out = [0] * self.degree
        for c, p in zip(coeffs, table):
            if c:
                for i in range(self.degree):
                    if p[i]:
                        out[i] += c * p[i]
        return out

    def sigma_table(self, d):
        """Images of the basis vectors under z -> z^d."""
        if math.gcd(d, self.order) != 1:
            raise UsageError(f"sigma_{d} is not an automorphism of Q(zeta_{self.order})")
        return [self.powers[(i * d) % self.order] for i in range(self.degree)]

    def shift_table(self, e):
        """Images of the basis vectors under multiplication by z^e."""
        return [self.powers[(i + e) % self.order] for i in range(self.degree)]

    def lift_table(self, target_order):
        """Images of the basis vectors of this field inside Q(zeta_target)."""
        if target_order % self.order:
            raise UsageError(f"cannot lift order {self.order} to {target_order}")
        target = cyclo_field(target_order)
        k = target_order // self.order
        return [target.powers[(i * k) % target_order] for i in range(self.degree)]


@functools.lru_cache(maxsize=None)
def cyclo_field(order):
    return CycloField(order)


class CycloElem:
    """
    An exact element of Q(zeta_M).

    Attributes:
        order (int): M.
        coeffs (tuple): phi(M) rationals in the power basis.
    """
    __slots__ = ('order', 'coeffs')

    def __init__(self, order, coeffs):
        field = cyclo_field(order)
        if len(coeffs) != field.degree:
            raise UsageError(f"Q(zeta_{order}) needs {field.degree} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = tuple(rational(c) for c in coeffs)

    @classmethod
    def _make(cls, order, coeffs):
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def from_rational(cls, value, order=1):
        value = rational(value)
        return cls._make(order, (value,) + (rational(0),) * (cyclo_field(order).degree - 1))

    @classmethod
    def zero(cls, order=1):
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order=1):
        return cls.from_rational(1, order)

    @classmethod
    def zeta(cls, order, k=1):
        """zeta_order^k."""
        field = cyclo_field(order)
        return cls._make(order, (rational(c) for c in field.powers[k % order]))

    @classmethod
    def from_int_row(cls, order, row, scale=1):
        """Element with coefficients row[i] / scale."""
        return cls._make(order, (rational(c, scale) for c in row))

    def to_int_row(self):
        """
        Splits the element into integer numerators over one common denominator.

        Returns:
            tuple: (tuple of int, int scale > 0).
        """
        scale = 1
        for c in self.coeffs:
            scale = math.lcm(scale, denominator(c))
        return tuple(numerator(c) * (scale // denominator(c)) for c in self.coeffs), scale

    # ---- predicates ----

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise UsageError(f"{self.render()} is not rational")
        return self.coeffs[0]

    def __bool__(self):
        return not self.is_zero()

    # ---- arithmetic ----

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.order != self.order:
                raise UsageError(
                    f"order mismatch {self.order} vs {other.order}; lift explicitly with cyclo_lift")
            return other
        return CycloElem.from_rational(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        return CycloElem._make(self.order, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem._make(self.order, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycloElem):
            try:
                value = rational(other)
            except (TypeError, ValueError, AttributeError):
                return NotImplemented
            return CycloElem._make(self.order, (a * value for a in self.coeffs))
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        field = cyclo_field(self.order)
        return CycloElem._make(self.order, (rational(c) for c in field.reduce(prod)))

    __rmul__ = __mul__

    def inverse(self):
        """
        Multiplicative inverse through the extended gcd with Phi_M over QQ.

        Raises:
            CycloZeroDivisionError: if the element is zero.
        """
        if self.is_zero():
            raise CycloZeroDivisionError(f"inverse of zero in Q(zeta_{self.order})")
        if self.is_rational():
            return CycloElem.from_rational(1 / self.coeffs[0], self.order)
        field = cyclo_field(self.order)
        poly = Poly([sympy.Rational(numerator(c), denominator(c)) for c in reversed(self.coeffs)],
                    _X, domain=QQ)
        inv = poly.invert(field.phi_poly)
        coeffs = [rational(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        coeffs.extend([rational(0)] * (field.degree - len(coeffs)))
        return CycloElem._make(self.order, coeffs)

    def __truediv__(self, other):
        if isinstance(other, CycloElem):
            return self * self._coerce(other).inverse()
        value = rational(other)
        if value == 0:
            raise CycloZeroDivisionError("division by rational zero")
        return self * (1 / value)

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloElem.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def sigma(self, d):
        """Image under the automorphism zeta_M -> zeta_M^d."""
        field = cyclo_field(self.order)
        return CycloElem._make(self.order, (rational(c) for c in field.combine(self.coeffs, field.sigma_table(d))))

    def lift(self, target_order):
        """Same element written in Q(zeta_target); target must be a multiple of M."""
        if target_order == self.order:
            return self
        table = cyclo_field(self.order).lift_table(target_order)
        out = cyclo_field(target_order).combine(self.coeffs, table)
        return CycloElem._make(target_order, (rational(c) for c in out))

    def project(self, target_order):
        """
        Rewrites the element in the subfield Q(zeta_target).

        Raises:
            UsageError: if target does not divide M or the element is not in the subfield.
        """
        if target_order == self.order:
            return self
        if self.order % target_order:
            raise UsageError(f"Q(zeta_{target_order}) is not a subfield of Q(zeta_{self.order})")
        table = cyclo_field(target_order).lift_table(self.order)
        matrix = sympy.Matrix([[table[col][row] for col in range(len(table))]
                               for row in range(cyclo_field(self.order).degree)])
        rhs = sympy.Matrix([sympy.Rational(numerator(c), denominator(c)) for c in self.coeffs])
        try:
            solution, params = matrix.gauss_jordan_solve(rhs)
        except ValueError:
            raise UsageError(f"{self.render()} does not lie in Q(zeta_{target_order})")
        return CycloElem._make(target_order, (rational(int(c.p), int(c.q)) for c in solution))

    def embed(self, prec_bits=128):
        """Complex value under zeta_M -> exp(2*pi*i/M), as an mpmath mpc."""
        with mpmath.workprec(prec_bits):
            z = mpmath.expjpi(mpmath.mpf(2) / self.order)
            total = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for c in self.coeffs:
                if c:
                    total += mpmath.mpf(numerator(c)) / denominator(c) * power
                power *= z
            return total

    # ---- comparison and rendering ----

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            if other.order != self.order:
                common = math.lcm(self.order, other.order)
                return self.lift(common).coeffs == other.lift(common).coeffs
            return self.coeffs == other.coeffs
        try:
            value = rational(other)
        except (TypeError, ValueError, AttributeError):
            return NotImplemented
        return self.is_rational() and self.coeffs[0] == value

    def minimal(self):
        """The same element in the smallest Q(zeta_d), d | M, that contains it."""
        if self.is_rational():
            return CycloElem.from_rational(self.coeffs[0], 1)
        for d in sympy.divisors(self.order):
            try:
                return self.project(d)
            except UsageError:
                continue
        return self

    def __hash__(self):
        # equal elements of different orders share their minimal form
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(_minimal_key(self.order, self.coeffs))

    def render(self):
        """Text form "c0 + c1*z + c2*z^2 ..." with zero terms omitted."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            magnitude = abs(c)
            if i == 0:
                body = format_rational(magnitude)
            else:
                zpart = 'z' if i == 1 else f'z^{i}'
                body = zpart if magnitude == 1 else f'{format_rational(magnitude)}*{zpart}'
            parts.append((c < 0, body))
        if not parts:
            return '0'
        negative, body = parts[0]
        text = ('-' if negative else '') + body
        for negative, body in parts[1:]:
            text += (' - ' if negative else ' + ') + body
        return text

    @classmethod
    def parse(cls, text, order):
        """Inverse of render for a known order."""
        field = cyclo_field(order)
        compact = text.replace(' ', '')
        if not compact:
            raise UsageError("empty cyclotomic element")
        acc = [rational(0)] * field.order
        pos = 0
        for match in _TERM.finditer(compact):
            if match.start() != pos:
                raise UsageError(f"cannot parse cyclotomic element {text!r}")
            pos = match.end()
            sign, body = match.groups()
            if 'z' in body:
                coef_text, _, power_text = body.partition('z')
                coef = rational(coef_text.rstrip('*')) if coef_text else rational(1)
                power = int(power_text[1:]) if power_text else 1
            else:
                coef, power = rational(body), 0
            if sign == '-':
                coef = -coef
            acc[power % field.order] += coef
        if pos != len(compact):
            raise UsageError(f"cannot parse cyclotomic element {text!r}")
        return cls._make(order, (rational(c) for c in field.reduce(acc)))

    def to_json(self):
        return {"order": self.order, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["order"]), [rational(c) for c in data["coeffs"]])

    def __repr__(self):
        return f"CycloElem({self.render()} [M={self.order}])"


@functools.lru_cache(maxsize=4096)
def _minimal_key(order, coeffs):
    reduced = CycloElem._make(order, coeffs).minimal()
    return reduced.order, reduced.coeffs


def cyclo_mul(a, b):
    """Product of two elements of the same order (lift first with cyclo_lift)."""
    if a.order != b.order:
        raise UsageError(f"order mismatch {a.order} vs {b.order}")
    return a * b


def cyclo_lift(a, order):
    return a.lift(order)


def cyclo_inv(a):
    return a.inverse()


def galois_sigma(a, d):
    return a.sigma(d)


def embed_complex(a, prec_bits):
    if prec_bits < 53:
        raise UsageError(f"prec_bits must be at least 53, got {prec_bits}")
    return a.embed(prec_bits)
