import functools
import logging
import math

import mpmath
from sympy.ntheory.factor_ import core

from exactnum.errors import UsageError

log = logging.getLogger(__name__)

TABLE_BOUND = 200


def is_fundamental_discriminant(d):
    """True for negative fundamental discriminants."""
    if d >= 0:
        return False
    if d % 4 == 1:
        return core(-d) == -d
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and core(-m) == -m
    return False


def reduced_forms(d):
    """
    Reduced primitive forms ax^2 + bxy + cy^2 of discriminant d < 0:
    |b| <= a <= c, and b >= 0 when |b| = a or a = c.
    """
    forms = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                forms.append((a, b, c))
        a += 1
    return forms


@functools.lru_cache(maxsize=1)
def class_number_table():
    """h(d) for every fundamental discriminant -TABLE_BOUND <= d < 0."""
    return {d: len(reduced_forms(d)) for d in range(-3, -TABLE_BOUND - 1, -1)
            if is_fundamental_discriminant(d)}


class ImagQuadData:
    """
    The imaginary quadratic field of discriminant d_K with O_K = Z tau_K + Z.

    Attributes:
        d_K (int): Fundamental discriminant.
        B_K, C_K (int): tau_K is a root of x^2 + B_K x + C_K.
        class_number (int): h_K from the reduced-form table.
    """

    def __init__(self, d_K, B_K, C_K, class_number):
        self.d_K = d_K
        self.B_K = B_K
        self.C_K = C_K
        self.class_number = class_number

    def tau(self, prec_bits=128):
        """tau_K = (d_K + sqrt(d_K)) / 2 with Im > 0."""
        with mpmath.workprec(prec_bits):
            return (mpmath.mpf(self.d_K) + mpmath.sqrt(mpmath.mpc(self.d_K))) / 2

    def q_abs(self, prec_bits=128):
        """|e^(2 pi i tau_K)| = e^(-pi sqrt|d_K|)."""
        with mpmath.workprec(prec_bits):
            return mpmath.exp(-mpmath.pi * mpmath.sqrt(-self.d_K))

    def to_json(self):
        return {"d_K": self.d_K, "B_K": self.B_K, "C_K": self.C_K, "class_number": self.class_number}

    def __repr__(self):
        return f"ImagQuadData(d_K={self.d_K}, B_K={self.B_K}, C_K={self.C_K}, h={self.class_number})"


def make_field(d_K):
    """
    Raises:
        UsageError: for positive, non-fundamental, or out-of-table discriminants.
    """
    if d_K >= 0 or not is_fundamental_discriminant(d_K):
        raise UsageError(f"{d_K} is not a negative fundamental discriminant")
    table = class_number_table()
    if d_K not in table:
        raise UsageError(f"class numbers are tabulated for |d_K| <= {TABLE_BOUND}, got {d_K}")
    B_K = -d_K
    C_K = (d_K * d_K - d_K) // 4
    if B_K * B_K - 4 * C_K != d_K:
        raise UsageError(f"B_K^2 - 4 C_K != d_K for d_K = {d_K}")
    return ImagQuadData(d_K, B_K, C_K, table[d_K])
