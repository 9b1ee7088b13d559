import pytest

from exactnum.cyclotomic import CycloElem
from exactnum.errors import UsageError
from famgroup.family import fricke, siegel_power, difference, siegel_generator, family_series
from famgroup.matrices import IndexClass, cosets_mod_pm_gamma, enumerate_gl2, modulo_pm
from modforms.indices import IndexVector
from primitivity.checks import (check_primitive, check_totally_primitive, order_profile, root_of_unity_order,
                                symbolic_ratio)
from primitivity.orbits import orbit
from primitivity.reports import (PrimitivityReport, TotalPrimitivityReport, NonConstantRatio,
                                 ConstantRatioCandidate)
from qseries.series import Distinct


def test_root_of_unity_order():
    assert root_of_unity_order(CycloElem.from_rational(-1, 5), 5) == 2
    assert root_of_unity_order(CycloElem.zeta(5, 2), 5) == 5
    assert root_of_unity_order(-CycloElem.zeta(5), 5) == 10
    assert root_of_unity_order(CycloElem.from_rational(2, 5), 5) is None
    assert root_of_unity_order(CycloElem.zero(5), 5) is None


def test_symbolic_ratio_of_difference_family():
    F = difference(5, 2)
    assert symbolic_ratio(F, IndexVector(2, 0, 5), IndexVector(1, 0, 5)) == -1
    assert symbolic_ratio(F, IndexVector(1, 0, 5), IndexVector(4, 0, 5)) == 1
    assert symbolic_ratio(fricke(5), IndexVector(2, 0, 5), IndexVector(1, 0, 5)) is None


@pytest.mark.parametrize("level", [2, 3, 4])
def test_siegel_family_is_totally_primitive(level):
    report = check_totally_primitive(siegel_power(level), 20)
    assert report.verdict == TotalPrimitivityReport.TOTALLY_PRIMITIVE
    assert report.affirmative
    assert report.unresolved() == []


@pytest.mark.slow
@pytest.mark.parametrize("level", [5, 6, 7])
def test_siegel_family_is_totally_primitive_at_higher_levels(level):
    assert check_totally_primitive(siegel_power(level), 40).affirmative


def test_difference_family_is_primitive_but_not_totally():
    F = difference(5, 2)
    primitive = check_primitive(F, 20)
    assert primitive.verdict == PrimitivityReport.PRIMITIVE
    total = check_totally_primitive(F, 20)
    assert total.verdict == TotalPrimitivityReport.NOT_TOTALLY_PRIMITIVE
    ratio = total.witness.ratio
    assert isinstance(ratio, ConstantRatioCandidate)
    assert ratio.constant == -1
    assert ratio.root_of_unity_order == 2
    assert ratio.proved
    data = total.to_json()
    assert data["witness"]["ratio"]["constant"] == "-1"


@pytest.mark.slow
def test_difference_family_at_level_fifteen():
    total = check_totally_primitive(difference(15, 4), 40, max_level=15)
    assert total.verdict == TotalPrimitivityReport.NOT_TOTALLY_PRIMITIVE
    assert total.witness.ratio.constant == -1


@pytest.mark.slow
def test_difference_family_at_level_thirteen():
    total = check_totally_primitive(difference(13, 5), 20, orbit_reduction=True, max_level=15)
    assert total.verdict == TotalPrimitivityReport.NOT_TOTALLY_PRIMITIVE
    assert total.witness.ratio.constant == -1


def test_fricke_family_is_totally_primitive():
    report = check_totally_primitive(fricke(3), 20)
    assert report.affirmative
    assert all(isinstance(p.ratio, NonConstantRatio) for p in report.pairs)


@pytest.mark.slow
@pytest.mark.parametrize("level", [7, 11])
def test_fricke_family_is_totally_primitive_at_coprime_levels(level):
    assert check_totally_primitive(fricke(level), 40, orbit_reduction=True).affirmative


@pytest.mark.slow
def test_fricke_family_is_totally_primitive_past_the_default_bound():
    with pytest.raises(UsageError):
        check_totally_primitive(fricke(13), 20)
    assert check_totally_primitive(fricke(13), 40, orbit_reduction=True, max_level=13).affirmative


@pytest.mark.parametrize("F", [fricke(3), siegel_power(3)], ids=lambda F: F.label())
def test_certificates_hold_at_higher_precision(F):
    T = 10
    report = check_totally_primitive(F, T)
    assert report.affirmative
    for pair in report.pairs:
        hu = family_series(F, pair.u.representative, T + 10)
        hv = family_series(F, pair.v.representative, T + 10)
        cert = pair.certificate
        assert isinstance(cert, Distinct)
        assert hu.coefficient(cert.exponent) == cert.coeff_a
        assert hv.coefficient(cert.exponent) == cert.coeff_b
        assert cert.coeff_a != cert.coeff_b
        assert isinstance(pair.ratio, NonConstantRatio)
        assert pair.ratio.exponent != 0
        assert (hu / hv).coefficient(pair.ratio.exponent) != 0


def test_orbit_reduction_scans_pairs_through_the_base_class():
    full = check_primitive(fricke(5), 10)
    reduced = check_primitive(fricke(5), 10, orbit_reduction=True)
    assert len(full.pairs) == 66
    assert len(reduced.pairs) == 11
    base = IndexClass(IndexVector(1, 0, 5))
    assert all(base in (p.u, p.v) for p in reduced.pairs)
    assert reduced.verdict == full.verdict == PrimitivityReport.PRIMITIVE


def test_parallel_scan_matches_serial():
    serial = check_primitive(siegel_power(3), 10)
    parallel = check_primitive(siegel_power(3), 10, workers=4)
    assert serial.to_json() == parallel.to_json()


def test_level_bound():
    with pytest.raises(UsageError):
        check_primitive(fricke(13), 10, max_level=12)


def test_order_profile():
    assert order_profile(siegel_power(2), IndexVector(1, 0, 2)) == -1
    assert order_profile(siegel_power(3), IndexVector(0, 1, 3)) == 3
    assert order_profile(fricke(5), IndexVector(1, 2, 5)) == -1


def test_orbit_listing():
    F = siegel_power(2)
    entries = orbit(F, IndexVector(1, 0, 2))
    assert len(entries) == len(cosets_mod_pm_gamma(2))
    assert entries[0].image == IndexVector(1, 0, 2)
    # SL2 acts transitively on V_2, so every class appears
    assert {str(e.index_class) for e in entries} == {"+-[0,1/2]", "+-[1/2,0]", "+-[1/2,1/2]"}
    assert sorted({e.order for e in entries}) == [-1, 2]


def test_orbit_listing_over_gl2_for_the_generator():
    F = siegel_generator(2, 1)
    entries = orbit(F, IndexVector(1, 0, 2), gl2=True)
    assert len(entries) == len(modulo_pm(enumerate_gl2(2)))
    assert 3 in {e.order for e in entries}
    assert -3 in {e.order for e in entries}
