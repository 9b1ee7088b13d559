import mpmath
import pytest

from cm.evaluate import (CMReport, cm_conjugates, eval_at_cm, eval_series_at_cm, j_by_products, siegel_value,
                         poly_from_roots, lattice_residual)
from cm.field import make_field, is_fundamental_discriminant, reduced_forms, class_number_table
from cm.reciprocity import reciprocity_group, determinant
from exactnum.errors import UsageError, PrecisionError
from famgroup.family import fricke, siegel_power, family_series
from modforms.eisenstein import j_series
from modforms.indices import IndexVector


@pytest.mark.parametrize("d, B, C", [(-7, 7, 14), (-4, 4, 5), (-8, 8, 18), (-11, 11, 33)])
def test_field_data(d, B, C):
    K = make_field(d)
    assert (K.B_K, K.C_K) == (B, C)
    tau = K.tau(128)
    assert tau.imag > 0
    assert abs(tau ** 2 + B * tau + C) < mpmath.mpf(10) ** -30


def test_discriminant_validation():
    assert is_fundamental_discriminant(-3)
    assert is_fundamental_discriminant(-20)
    assert not is_fundamental_discriminant(-12)
    assert not is_fundamental_discriminant(-9)
    for bad in (5, -12, -1000):
        with pytest.raises(UsageError):
            make_field(bad)


def test_class_numbers():
    table = class_number_table()
    assert table[-3] == table[-4] == table[-7] == table[-163] == 1
    assert table[-15] == 2
    assert table[-23] == 3
    assert reduced_forms(-20) == [(1, 0, 5), (2, 2, 3)]


@pytest.mark.parametrize("d, j", [(-7, -3375), (-4, 1728), (-8, 8000), (-11, -32768)])
def test_j_at_cm_points(d, j):
    K = make_field(d)
    tau = K.tau(128)
    assert abs(j_by_products(tau) - j) < 1e-6
    value, tail = eval_series_at_cm(j_series(30), tau)
    assert abs(value - j) < 1e-6
    assert tail < 1e-6


def test_reciprocity_group_sizes():
    K = make_field(-7)
    group = reciprocity_group(K, 3)
    assert len(group) == 8
    assert len(group.pm_classes) == 4
    assert group.is_closed()
    assert len(reciprocity_group(K, 2)) == 1
    assert all(determinant(K, 3, s, t) != 0 for s, t in group.pairs)


def test_siegel_value_matches_its_series():
    K = make_field(-7)
    tau = K.tau(128)
    v = IndexVector(1, 2, 3)
    with mpmath.workprec(128):
        numeric = siegel_value(v, tau) ** 36
        series, tail = eval_series_at_cm(family_series(siegel_power(3), v, 30), tau)
        assert tail < 1e-6
        assert abs(eval_at_cm(siegel_power(3), v, K) - numeric) < 1e-30 * abs(numeric)
        assert abs(numeric - series) < 1e-6 * abs(numeric)


@pytest.mark.parametrize("v", [IndexVector(0, 1, 3), IndexVector(1, 2, 3), IndexVector(2, 1, 3)])
def test_member_values_honour_the_working_precision(v):
    K = make_field(-7)
    coarse = eval_at_cm(siegel_power(3), v, K, prec_bits=128)
    fine = eval_at_cm(siegel_power(3), v, K, prec_bits=256)
    with mpmath.workprec(256):
        assert abs(coarse - fine) < mpmath.mpf(10) ** -30 * abs(fine)


def test_parallel_conjugates_keep_their_precision():
    K = make_field(-7)
    serial = cm_conjugates(siegel_power(3), None, 2, K, 3, T=30)
    parallel = cm_conjugates(siegel_power(3), None, 2, K, 3, T=30, workers=4)
    assert parallel.near_integral
    with mpmath.workprec(128):
        for a, b in zip(serial.values, parallel.values):
            assert abs(a - b) < mpmath.mpf(10) ** -30 * abs(a)


def test_eval_at_cm_checks_the_tail():
    with pytest.raises(PrecisionError):
        eval_at_cm(fricke(3), IndexVector(1, 0, 3), make_field(-3), T=2, tol=1e-12)


def test_poly_from_roots_and_lattice_residual():
    coeffs = poly_from_roots([mpmath.mpc(2), mpmath.mpc(3)])
    assert coeffs == [6, -5, 1]
    tau = make_field(-7).tau()
    assert lattice_residual(3 + 2 * tau, tau) < 1e-10


@pytest.mark.parametrize("d, N", [(-7, 3), (-8, 3), (-11, 2), (-11, 3)])
@pytest.mark.parametrize("n", [1, -1, 2])
def test_siegel_conjugates_are_distinct(d, N, n):
    K = make_field(d)
    report = cm_conjugates(siegel_power(N), None, n, K, N, T=30)
    assert len(report.values) == len(reciprocity_group(K, N).pm_classes)
    assert report.distinct
    if n > 0:
        assert report.near_integral
        assert report.verdict == CMReport.DISTINCT
    else:
        assert report.near_integral is None


def test_cm_rejects_excluded_fields():
    F = siegel_power(3)
    with pytest.raises(UsageError):
        cm_conjugates(F, None, 1, make_field(-4), 3)
    with pytest.raises(UsageError):
        cm_conjugates(F, None, 1, make_field(-7), 2)
    with pytest.raises(UsageError):
        cm_conjugates(F, None, 0, make_field(-7), 3)


def test_cm_report_json():
    report = cm_conjugates(siegel_power(3), None, 1, make_field(-7), 3, T=30)
    data = report.to_json()
    assert data["field"] == {"d_K": -7, "B_K": 7, "C_K": 14, "class_number": 1}
    assert data["verdict"] == "Distinct"
    assert [(c["s"], c["t"]) for c in data["conjugates"]] == report.pairs
