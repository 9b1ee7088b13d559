"""
Truncated Laurent series in q^(1/D) with coefficients in Q(zeta_M).

Coefficients are kept as dense integer rows over one common denominator:
row i holds the coordinates of the coefficient of q^((start + i)/D), and the
series is known exactly for every exponent below prec/D. The sparse
exponent -> coefficient view is available through `terms`.
"""
import logging
import math

from exactnum.backend import rational, numerator, denominator, format_rational
from exactnum.cyclotomic import CycloElem, cyclo_field
from exactnum.errors import UsageError, PrecisionError

from . import kernel

log = logging.getLogger(__name__)


class QOrder:
    """
    q-order of a series: a rational exponent, or None for zero-to-precision.
    """
    __slots__ = ('value',)

    def __init__(self, value=None):
        self.value = value

    @property
    def zero_to_precision(self):
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, QOrder):
            return self.value == other.value
        if self.value is None:
            return False
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        if self.value is None:
            return "QOrder(zero-to-precision)"
        return f"QOrder({format_rational(self.value)})"


class Distinct:
    """Proof that two series differ: their coefficients at `exponent` disagree."""

    def __init__(self, exponent, coeff_a, coeff_b):
        self.exponent = exponent
        self.coeff_a = coeff_a
        self.coeff_b = coeff_b

    def to_json(self):
        return {
            "kind": "Distinct",
            "exponent": format_rational(self.exponent),
            "coeff_a": self.coeff_a.render(),
            "coeff_b": self.coeff_b.render(),
        }

    def __repr__(self):
        return f"Distinct({format_rational(self.exponent)}, {self.coeff_a.render()}, {self.coeff_b.render()})"


class UndecidedToPrecision:
    """Two series agree on every known coefficient below `trunc`."""

    def __init__(self, trunc):
        self.trunc = trunc

    def to_json(self):
        return {"kind": "UndecidedToPrecision", "trunc": format_rational(self.trunc)}

    def __repr__(self):
        return f"UndecidedToPrecision({format_rational(self.trunc)})"


def _slot(value, den, what):
    value = rational(value)
    scaled = value * den
    if denominator(scaled) != 1:
        raise UsageError(f"{what} {format_rational(value)} is not a multiple of 1/{den}")
    return numerator(scaled)


class FracQSeries:
    """
    Immutable truncated series.

    Attributes:
        cyclo_order (int): M, coefficients live in Q(zeta_M).
        exp_den (int): D, exponents lie in (1/D)Z.
        start (int): Slot of the first stored row (exponent start/D).
        rows (tuple): Integer coordinate rows, dense up to the truncation slot.
        scale (int): Positive common denominator of every row entry.
        prec (int): Truncation slot; exponents below prec/D are known.
    """
    __slots__ = ('cyclo_order', 'exp_den', 'start', 'rows', 'scale', 'prec', '_terms')

    def __init__(self, cyclo_order, exp_den, start, rows, scale, prec):
        if exp_den < 1:
            raise UsageError(f"exp_den must be positive, got {exp_den}")
        phi = cyclo_field(cyclo_order).degree
        rows = list(rows[:max(prec - start, 0)])
        lead = 0
        while lead < len(rows) and not any(rows[lead]):
            lead += 1
        rows = rows[lead:]
        start += lead
        if rows:
            rows.extend([(0,) * phi] * (prec - start - len(rows)))
            rows, scale = kernel.normalize(rows, scale)
        else:
            start, scale = prec, 1
        self.cyclo_order = cyclo_order
        self.exp_den = exp_den
        self.start = start
        self.rows = tuple(rows)
        self.scale = scale
        self.prec = prec
        self._terms = None

    # ---- constructors ----

    @classmethod
    def from_terms(cls, terms, trunc, cyclo_order=1, exp_den=1):
        """
        Builds a series from an exponent -> coefficient mapping.

        Args:
            terms (dict): exponent (rational) -> CycloElem or rational.
            trunc (rational): Truncation point; every exponent must lie below it.
            cyclo_order (int): Minimal cyclotomic order; raised to cover the coefficients.
            exp_den (int): Minimal exponent denominator; raised to cover exponents and trunc.
        """
        trunc = rational(trunc)
        exponents = {rational(e): c for e, c in terms.items()}
        den = exp_den
        for e in list(exponents) + [trunc]:
            den = math.lcm(den, denominator(e))
        order = cyclo_order
        for c in exponents.values():
            if isinstance(c, CycloElem):
                order = math.lcm(order, c.order)
        prec = _slot(trunc, den, "trunc")
        coeffs = {}
        for e, c in exponents.items():
            if e >= trunc:
                raise UsageError(f"exponent {format_rational(e)} is not below trunc {format_rational(trunc)}")
            elem = c.lift(order) if isinstance(c, CycloElem) else CycloElem.from_rational(c, order)
            if not elem.is_zero():
                coeffs[_slot(e, den, "exponent")] = elem
        phi = cyclo_field(order).degree
        if not coeffs:
            return cls(order, den, prec, (), 1, prec)
        scale = 1
        for elem in coeffs.values():
            scale = math.lcm(scale, elem.to_int_row()[1])
        start = min(coeffs)
        rows = [(0,) * phi] * (prec - start)
        for slot, elem in coeffs.items():
            ints, s = elem.to_int_row()
            rows[slot - start] = tuple(c * (scale // s) for c in ints)
        return cls(order, den, start, rows, scale, prec)

    @classmethod
    def from_int_coeffs(cls, coeffs, trunc_slot, start=0, exp_den=1, scale=1):
        """Rational-coefficient series coeffs[i] / scale * q^((start+i)/exp_den)."""
        return cls(1, exp_den, start, [(c,) for c in coeffs], scale, trunc_slot)

    @classmethod
    def monomial(cls, coeff, exponent, trunc):
        return cls.from_terms({exponent: coeff}, trunc)

    @classmethod
    def one(cls, trunc):
        return cls.from_terms({0: 1}, trunc)

    @classmethod
    def zero(cls, trunc):
        return cls.from_terms({}, trunc)

    # ---- views ----

    @property
    def trunc(self):
        return rational(self.prec, self.exp_den)

    @property
    def terms(self):
        """Ordered exponent -> CycloElem map without zero entries."""
        if self._terms is None:
            out = {}
            for i, row in enumerate(self.rows):
                if any(row):
                    out[rational(self.start + i, self.exp_den)] = CycloElem.from_int_row(
                        self.cyclo_order, row, self.scale)
            self._terms = out
        return self._terms

    def iter_rows(self):
        """Yields (slot, integer row) for nonzero rows; divide by `scale` for the value."""
        for i, row in enumerate(self.rows):
            if any(row):
                yield self.start + i, row

    def is_zero_to_precision(self):
        return not self.rows

    def ord_q(self):
        if not self.rows:
            return QOrder(None)
        return QOrder(rational(self.start, self.exp_den))

    def leading_coefficient(self):
        if not self.rows:
            raise PrecisionError("zero-to-precision series has no leading coefficient")
        return CycloElem.from_int_row(self.cyclo_order, self.rows[0], self.scale)

    def coefficient(self, exponent):
        exponent = rational(exponent)
        if exponent >= self.trunc:
            raise PrecisionError(
                f"coefficient of q^{format_rational(exponent)} is beyond trunc {format_rational(self.trunc)}")
        scaled = exponent * self.exp_den
        if denominator(scaled) != 1:
            return CycloElem.zero(self.cyclo_order)
        i = numerator(scaled) - self.start
        if i < 0:
            return CycloElem.zero(self.cyclo_order)
        return CycloElem.from_int_row(self.cyclo_order, self.rows[i], self.scale)

    def relative_precision(self):
        """Number of known slots from the leading term on."""
        return self.prec - self.start

    def is_rational(self):
        """True when every coefficient is rational."""
        return all(not any(row[1:]) for row in self.rows)

    # ---- representation changes ----

    def with_exp_den(self, den):
        if den == self.exp_den:
            return self
        if den % self.exp_den:
            raise UsageError(f"cannot refine exp_den {self.exp_den} to {den}")
        k = den // self.exp_den
        phi = cyclo_field(self.cyclo_order).degree
        rows = [(0,) * phi] * (len(self.rows) * k)
        for i, row in enumerate(self.rows):
            rows[i * k] = row
        return FracQSeries(self.cyclo_order, den, self.start * k, rows, self.scale, self.prec * k)

    def with_order(self, order):
        if order == self.cyclo_order:
            return self
        source = cyclo_field(self.cyclo_order)
        table = source.lift_table(order)
        target = cyclo_field(order)
        rows = [tuple(target.combine(row, table)) for row in self.rows]
        return FracQSeries(order, self.exp_den, self.start, rows, self.scale, self.prec)

    def as_rational(self):
        """Same series over Q (cyclo_order 1); every coefficient must be rational."""
        if not self.is_rational():
            raise UsageError("series has irrational coefficients")
        if self.cyclo_order == 1:
            return self
        return FracQSeries(1, self.exp_den, self.start, [row[:1] for row in self.rows], self.scale, self.prec)

    def with_min_exp_den(self):
        """Coarsest exp_den that still holds every stored exponent and the truncation."""
        g = math.gcd(self.exp_den, self.prec)
        for slot, _ in self.iter_rows():
            g = math.gcd(g, slot)
            if g == 1:
                return self
        rows = self.rows[::g]
        return FracQSeries(self.cyclo_order, self.exp_den // g, self.start // g, rows, self.scale, self.prec // g)

    def shifted(self, exponent):
        """q^exponent * self, exactly."""
        exponent = rational(exponent)
        den = math.lcm(self.exp_den, denominator(exponent))
        s = self.with_exp_den(den)
        k = _slot(exponent, den, "shift")
        return FracQSeries(s.cyclo_order, den, s.start + k, s.rows, s.scale, s.prec + k)

    def truncate(self, trunc):
        trunc = rational(trunc)
        if trunc >= self.trunc:
            return self
        den = math.lcm(self.exp_den, denominator(trunc))
        s = self.with_exp_den(den)
        return FracQSeries(s.cyclo_order, den, s.start, s.rows, s.scale, _slot(trunc, den, "trunc"))

    # ---- arithmetic ----

    def __add__(self, other):
        return series_add(self, _as_series(other, self))

    __radd__ = __add__

    def __neg__(self):
        return FracQSeries(self.cyclo_order, self.exp_den, self.start,
                           [tuple(-c for c in row) for row in self.rows], self.scale, self.prec)

    def __sub__(self, other):
        return series_add(self, -_as_series(other, self))

    def __rsub__(self, other):
        return series_add(_as_series(other, self), -self)

    def __mul__(self, other):
        if isinstance(other, FracQSeries):
            return series_mul(self, other)
        return scale_series(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FracQSeries):
            return series_mul(self, series_inv(other))
        if not isinstance(other, CycloElem):
            other = CycloElem.from_rational(other)
        return scale_series(self, other.inverse())

    def __rtruediv__(self, other):
        return scale_series(series_inv(self), other)

    def __pow__(self, n):
        return series_pow(self, n)

    def __eq__(self, other):
        if not isinstance(other, FracQSeries):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        return isinstance(distinctness_certificate(self, other), UndecidedToPrecision)

    __hash__ = None

    def __repr__(self):
        from .codec import to_text
        return f"FracQSeries({to_text(self)})"


def _as_series(value, like):
    if isinstance(value, FracQSeries):
        return value
    if like.prec <= 0:
        return FracQSeries.zero(like.trunc)
    return FracQSeries.from_terms({0: value}, like.trunc)


def align(a, b):
    """Lifts both series to a common cyclotomic order and exponent denominator."""
    order = math.lcm(a.cyclo_order, b.cyclo_order)
    den = math.lcm(a.exp_den, b.exp_den)
    return a.with_order(order).with_exp_den(den), b.with_order(order).with_exp_den(den)


def series_add(a, b):
    a, b = align(a, b)
    prec = min(a.prec, b.prec)
    phi = cyclo_field(a.cyclo_order).degree
    if a.is_zero_to_precision() and b.is_zero_to_precision():
        return FracQSeries(a.cyclo_order, a.exp_den, prec, (), 1, prec)
    scale = math.lcm(a.scale, b.scale)
    fa, fb = scale // a.scale, scale // b.scale
    starts = [s.start for s in (a, b) if s.rows]
    start = min(starts)
    if start >= prec:
        return FracQSeries(a.cyclo_order, a.exp_den, prec, (), 1, prec)
    rows = [[0] * phi for _ in range(prec - start)]
    for s, f in ((a, fa), (b, fb)):
        for i, row in enumerate(s.rows):
            k = s.start + i - start
            if k >= len(rows):
                break
            target = rows[k]
            for j, c in enumerate(row):
                if c:
                    target[j] += c * f
    return FracQSeries(a.cyclo_order, a.exp_den, start, [tuple(r) for r in rows], scale, prec)


def scale_series(a, c):
    """Multiplies every coefficient by the scalar c (CycloElem or rational)."""
    if not isinstance(c, CycloElem):
        c = CycloElem.from_rational(c)
    order = math.lcm(a.cyclo_order, c.order)
    a = a.with_order(order)
    c = c.lift(order)
    ints, s = c.to_int_row()
    field = cyclo_field(order)
    if c.is_rational():
        rows = [tuple(x * ints[0] for x in row) for row in a.rows]
    else:
        rows = [kernel.mul_row(row, ints, field) for row in a.rows]
    return FracQSeries(order, a.exp_den, a.start, rows, a.scale * s, a.prec)


def series_mul(a, b):
    """
    Exact product with truncation min(a.trunc + ord(b), b.trunc + ord(a)).

    Raises:
        PrecisionError: if both factors are zero-to-precision.
    """
    za, zb = a.is_zero_to_precision(), b.is_zero_to_precision()
    if za and zb:
        raise PrecisionError("product of two zero-to-precision series is undetermined")
    order = math.lcm(a.cyclo_order, b.cyclo_order)
    a, b = a.with_order(order), b.with_order(order)
    if b.exp_den % a.exp_den and a.exp_den % b.exp_den:
        den = math.lcm(a.exp_den, b.exp_den)
        a, b = a.with_exp_den(den), b.with_exp_den(den)
    if a.exp_den > b.exp_den:
        a, b = b, a
        za, zb = zb, za
    r = b.exp_den // a.exp_den
    den = b.exp_den
    if za:
        prec = a.prec * r + b.start
        return FracQSeries(order, den, prec, (), 1, prec)
    if zb:
        prec = b.prec + a.start * r
        return FracQSeries(order, den, prec, (), 1, prec)
    start = a.start * r + b.start
    prec = min(a.prec * r + b.start, b.prec + a.start * r)
    length = prec - start
    field = cyclo_field(order)
    phi = field.degree
    out = [(0,) * phi] * length
    for c in range(min(r, length)):
        count = (length - c + r - 1) // r
        part = kernel.mul_rows(list(a.rows), list(b.rows[c::r]), count, field)
        for k, row in enumerate(part):
            out[c + r * k] = row
    return FracQSeries(order, den, start, out, a.scale * b.scale, prec)


def series_inv(a):
    """
    Inverse with ord(inv(a)) = -ord(a) and the same relative precision.

    Raises:
        PrecisionError: if a is zero-to-precision.
    """
    if a.is_zero_to_precision():
        raise PrecisionError("cannot invert a zero-to-precision series")
    field = cyclo_field(a.cyclo_order)
    length = a.relative_precision()
    lead = CycloElem.from_int_row(a.cyclo_order, a.rows[0], 1)
    lead_inv, lead_scale = lead.inverse().to_int_row()
    if lead.is_rational():
        unit = [tuple(x * lead_inv[0] for x in row) for row in a.rows]
    else:
        unit = [kernel.mul_row(row, lead_inv, field) for row in a.rows]
    w_rows, w_scale = kernel.newton_inverse(unit, lead_scale, length, field)
    if lead.is_rational():
        rows = [tuple(x * lead_inv[0] * a.scale for x in row) for row in w_rows]
    else:
        rows = [tuple(x * a.scale for x in kernel.mul_row(row, lead_inv, field)) for row in w_rows]
    return FracQSeries(a.cyclo_order, a.exp_den, -a.start, rows, w_scale * lead_scale, -a.start + length)


def series_pow(a, n):
    """Repeated-squaring power; n < 0 inverts first."""
    if n < 0:
        return series_pow(series_inv(a), -n)
    if n == 0:
        if a.is_zero_to_precision():
            raise PrecisionError("zero-to-precision series raised to the power 0")
        return FracQSeries(a.cyclo_order, a.exp_den, 0,
                           [(1,) + (0,) * (cyclo_field(a.cyclo_order).degree - 1)], 1, a.relative_precision())
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else series_mul(result, base)
        n >>= 1
        if n:
            base = series_mul(base, base)
    return result


def ord_q(a):
    return a.ord_q()


def shift_tau_plus_one(a):
    """
    Substitutes tau -> tau + 1: the coefficient at exponent k/D is multiplied by zeta_D^k.

    The result always has cyclo_order lcm(M, D).
    """
    order = math.lcm(a.cyclo_order, a.exp_den)
    s = a.with_order(order)
    field = cyclo_field(order)
    step = order // a.exp_den
    rows = []
    for i, row in enumerate(s.rows):
        if any(row):
            rows.append(tuple(field.combine(row, field.shift_table((s.start + i) * step))))
        else:
            rows.append(row)
    return FracQSeries(order, s.exp_den, s.start, rows, s.scale, s.prec)


def apply_sigma(a, d):
    """Applies sigma_d to every coefficient; exponents are unchanged."""
    field = cyclo_field(a.cyclo_order)
    table = field.sigma_table(d)
    if d % a.cyclo_order == 1 % a.cyclo_order:
        return a
    rows = [tuple(field.combine(row, table)) if any(row) else row for row in a.rows]
    return FracQSeries(a.cyclo_order, a.exp_den, a.start, rows, a.scale, a.prec)


def distinctness_certificate(a, b):
    """
    Smallest exponent where the known coefficients of a and b differ.

    Returns:
        Distinct | UndecidedToPrecision: Distinct is a proof that a != b.
    """
    a, b = align(a, b)
    prec = min(a.prec, b.prec)
    starts = [s.start for s in (a, b) if s.rows]
    if not starts:
        return UndecidedToPrecision(rational(prec, a.exp_den))
    phi = cyclo_field(a.cyclo_order).degree
    empty = (0,) * phi
    for slot in range(min(starts), prec):
        ia, ib = slot - a.start, slot - b.start
        ra = a.rows[ia] if 0 <= ia < len(a.rows) else empty
        rb = b.rows[ib] if 0 <= ib < len(b.rows) else empty
        if any(x * b.scale != y * a.scale for x, y in zip(ra, rb)):
            return Distinct(rational(slot, a.exp_den),
                            CycloElem.from_int_row(a.cyclo_order, ra, a.scale),
                            CycloElem.from_int_row(a.cyclo_order, rb, b.scale))
    return UndecidedToPrecision(rational(prec, a.exp_den))
