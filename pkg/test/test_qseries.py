import pytest

from exactnum.backend import rational
from exactnum.cyclotomic import CycloElem
from exactnum.errors import PrecisionError, UsageError
from qseries.series import (FracQSeries, Distinct, UndecidedToPrecision, series_mul, series_inv,
                            series_pow, shift_tau_plus_one, apply_sigma, distinctness_certificate)


def geometric(trunc):
    return FracQSeries.from_terms({0: 1, 1: -1}, trunc)


def test_inverse_of_one_minus_q():
    inv = 1 / geometric(10)
    assert inv.trunc == 10
    assert all(inv.coefficient(k) == 1 for k in range(10))
    with pytest.raises(PrecisionError):
        inv.coefficient(10)


def test_product_truncation_follows_orders():
    a = FracQSeries.from_terms({0: 2, 3: 1}, 5)
    b = FracQSeries.from_terms({-1: 1, 1: 7}, 3)
    c = series_mul(a, b)
    # min(5 + ord b, 3 + ord a)
    assert c.trunc == 3
    assert c.ord_q().value == -1
    assert c.coefficient(-1) == 2
    assert c.coefficient(1) == 14


def test_fractional_exponents_combine():
    a = FracQSeries.from_terms({rational(1, 2): 1}, 4)
    b = FracQSeries.from_terms({rational(1, 3): 1}, 4)
    c = a * b
    assert c.exp_den == 6
    assert list(c.terms) == [rational(5, 6)]


def test_negative_power_inverts():
    s = geometric(8)
    assert series_pow(s, -2) * series_pow(s, 2) == FracQSeries.one(8)
    assert series_inv(series_inv(s)) == s


def test_zero_to_precision_handling():
    zero = FracQSeries.zero(5)
    assert zero.ord_q().zero_to_precision
    assert zero.is_zero_to_precision()
    with pytest.raises(PrecisionError):
        series_inv(zero)
    with pytest.raises(PrecisionError):
        series_mul(zero, zero)
    with pytest.raises(PrecisionError):
        zero.leading_coefficient()
    # a zero factor keeps the other factor's order in the truncation
    product = series_mul(zero, FracQSeries.from_terms({-2: 1}, 3))
    assert product.is_zero_to_precision()
    assert product.trunc == 3


def test_exponent_beyond_trunc_is_rejected():
    with pytest.raises(UsageError):
        FracQSeries.from_terms({4: 1}, 4)


def test_shift_tau_plus_one_multiplies_by_roots_of_unity():
    s = FracQSeries.from_terms({rational(1, 2): 1, 1: 3}, 2)
    shifted = shift_tau_plus_one(s)
    assert shifted.cyclo_order == 2
    assert shifted.coefficient(rational(1, 2)) == -1
    assert shifted.coefficient(1) == 3
    # applying it D times is the identity
    assert shift_tau_plus_one(shifted) == s


def test_apply_sigma_acts_on_coefficients():
    z = CycloElem.zeta(5)
    s = FracQSeries.from_terms({0: z, 1: z * z}, 3)
    moved = apply_sigma(s, 2)
    assert moved.coefficient(0) == CycloElem.zeta(5, 2)
    assert moved.coefficient(1) == CycloElem.zeta(5, 4)
    assert apply_sigma(s, 6) is s


def test_distinctness_certificate():
    a = FracQSeries.from_terms({0: 1, 2: 5}, 6)
    b = FracQSeries.from_terms({0: 1, 2: 4}, 4)
    cert = distinctness_certificate(a, b)
    assert isinstance(cert, Distinct)
    assert cert.exponent == 2
    assert cert.coeff_a == 5 and cert.coeff_b == 4
    same = distinctness_certificate(a, a.truncate(3))
    assert isinstance(same, UndecidedToPrecision)
    assert same.trunc == 3


def test_shifted_multiplies_by_a_monomial():
    s = geometric(4).shifted(rational(-1, 3))
    assert s.ord_q().value == rational(-1, 3)
    assert s.trunc == rational(11, 3)
    assert s.coefficient(rational(2, 3)) == -1


def test_rational_view():
    s = FracQSeries.from_terms({0: CycloElem.from_rational(3, 5)}, 2)
    assert s.cyclo_order == 5
    assert s.is_rational()
    assert s.as_rational().cyclo_order == 1
    with pytest.raises(UsageError):
        FracQSeries.from_terms({0: CycloElem.zeta(5)}, 2).as_rational()
