import random

import pytest

from exactnum.errors import UsageError
from famgroup.family import (FamilyDescriptor, fricke, siegel_power, difference, siegel_generator, product,
                             family_series, member_order, act_F3, galois_conjugate_series)
from famgroup.matrices import (MatModN, enumerate_sl2, enumerate_gl2, cosets_mod_pm_gamma, sl2_order, gl2_decompose,
                               qn_set, IndexClass, index_vectors, index_classes, modulo_pm)
from modforms.indices import IndexVector
from qseries.series import shift_tau_plus_one


@pytest.mark.parametrize("level, sl2, cosets, gl2", [(2, 6, 6, 6), (3, 24, 12, 48), (4, 48, 24, 96)])
def test_group_sizes(level, sl2, cosets, gl2):
    assert len(enumerate_sl2(level)) == sl2 == sl2_order(level)
    assert len(cosets_mod_pm_gamma(level)) == cosets
    assert len(enumerate_gl2(level)) == gl2


def test_cosets_start_with_identity():
    for level in (2, 3, 5):
        assert cosets_mod_pm_gamma(level)[0] == MatModN.identity(level)


def test_matrix_algebra():
    m = MatModN.parse("2,1;1,1", 5)
    assert m.det() == 1
    assert m * m.inverse() == MatModN.identity(5)
    assert m.transpose() == MatModN(2, 1, 1, 1, 5)
    assert (-m).equal_mod_pm(m)
    assert MatModN(1, 3, 0, 4, 5).is_upper_unipotent_diag()
    assert MatModN(4, 2, 0, 1, 5).is_upper_unipotent_diag()
    assert not m.is_upper_unipotent_diag()
    with pytest.raises(UsageError):
        MatModN(2, 0, 0, 2, 4)
    with pytest.raises(UsageError):
        MatModN.parse("1,2,3", 5)


def test_modulo_pm_keeps_first_representatives():
    reps = modulo_pm(enumerate_sl2(3))
    assert len(reps) == 12
    assert len({m.pm_key() for m in reps}) == 12


def test_gl2_decomposition():
    alpha = MatModN(1, 2, 3, 2, 7)
    g_part, sl_part = gl2_decompose(alpha)
    assert g_part == MatModN.diag(alpha.det(), 7)
    assert sl_part.det() == 1
    assert g_part * sl_part == alpha


@pytest.mark.parametrize("level, expected", [(5, [2]), (7, []), (13, [5]), (15, [4])])
def test_qn_set(level, expected):
    assert qn_set(level) == expected


def test_qn_set_needs_odd_level():
    with pytest.raises(UsageError):
        qn_set(8)


def test_index_classes():
    assert len(index_vectors(2)) == 3
    assert len(index_classes(3)) == 4
    assert len(index_classes(5)) == 12
    cls = IndexClass(IndexVector(4, 3, 5))
    assert IndexVector(1, 2, 5) in cls
    assert str(cls) == "+-[1/5,2/5]"


def test_family_validation():
    with pytest.raises(UsageError):
        siegel_power(3, 12)
    with pytest.raises(UsageError):
        difference(5, 1)
    with pytest.raises(UsageError):
        difference(4, 1)
    with pytest.raises(UsageError):
        siegel_generator(2, 0)
    with pytest.raises(UsageError):
        product(3, [((1, 0, 0, 1), 18)])
    with pytest.raises(UsageError):
        FamilyDescriptor("eta", 3)


def test_family_identity():
    F = difference(5, 2)
    assert F == difference(5, 2)
    assert F != difference(13, 5)
    assert len(F.get_hash()) == 6 and F.get_hash() == F.get_hash().upper()
    assert F.label() == "diff:2"
    assert siegel_power(3).label() == "siegel^36"
    assert siegel_generator(2, 1).label() == "sgen:1"
    assert not siegel_generator(2, 1).is_gl2_homogeneous()


def test_member_index_checks():
    with pytest.raises(UsageError):
        family_series(fricke(4), IndexVector(2, 0, 4), 5)
    with pytest.raises(UsageError):
        family_series(fricke(3), IndexVector(1, 0, 2), 5)


def test_member_orders_are_symbolic_for_siegel_kinds():
    assert member_order(siegel_power(2), IndexVector(1, 0, 2)) == -1
    assert member_order(siegel_power(3), IndexVector(0, 1, 3)) == 3
    assert member_order(fricke(3), IndexVector(0, 1, 3)) is None
    # g_[1/2,0]^24 g_[0,1/2]^48
    assert member_order(siegel_generator(2, 1), IndexVector(1, 0, 2)) == 3


def test_act_f3_transposes():
    gamma = MatModN(2, 1, 1, 1, 5)
    assert act_F3(IndexVector(1, 0, 5), gamma) == IndexVector(2, 1, 5)
    assert act_F3(IndexVector(0, 1, 5), gamma) == IndexVector(1, 1, 5)
    assert act_F3(IndexVector(3, 4, 5), MatModN.identity(5)) == IndexVector(3, 4, 5)


@pytest.mark.parametrize("F", [fricke(2), fricke(3), fricke(5), siegel_power(2), siegel_power(3),
                               siegel_power(5), difference(5, 2), siegel_generator(2, 1),
                               siegel_generator(3, 1)], ids=FamilyDescriptor.label)
def test_tau_plus_one_moves_the_index(F):
    T = 40
    vectors = index_vectors(F.level)
    unipotent = MatModN(1, 1, 0, 1, F.level)
    for v in random.Random(F.level).sample(vectors, min(10, len(vectors))):
        shifted = shift_tau_plus_one(family_series(F, v, T))
        assert shifted == galois_conjugate_series(F, v, unipotent, T), v
        if F.is_gl2_homogeneous():
            assert shifted == family_series(F, IndexVector(v.a, v.a + v.b, F.level), T), v


@pytest.mark.parametrize("F", [fricke(3), fricke(4), fricke(5), siegel_power(3), siegel_power(4),
                               siegel_power(5), siegel_generator(3, 1), siegel_generator(4, 1),
                               siegel_generator(5, 1), difference(5, 2)], ids=FamilyDescriptor.label)
def test_short_expansions_are_truncations_of_long_ones(F):
    for v in index_vectors(F.level):
        assert family_series(F, v, 10) == family_series(F, v, 30).truncate(10), v


@pytest.mark.parametrize("F", [fricke(n) for n in range(2, 6)] + [siegel_power(n) for n in range(2, 6)]
                         + [difference(5, 2)], ids=FamilyDescriptor.label)
def test_members_are_even_in_the_index(F):
    for v in index_vectors(F.level):
        assert family_series(F, v, 6) == family_series(F, -v, 6), v


@pytest.mark.slow
@pytest.mark.parametrize("F", [fricke(n) for n in range(6, 9)] + [siegel_power(n) for n in range(6, 9)],
                         ids=FamilyDescriptor.label)
def test_members_are_even_in_the_index_at_higher_levels(F):
    for v in index_vectors(F.level):
        assert family_series(F, v, 6) == family_series(F, -v, 6), v


@pytest.mark.parametrize("F", [fricke(5), siegel_power(5)], ids=FamilyDescriptor.label)
def test_conjugation_paths_agree(F):
    v = IndexVector(1, 2, 5)
    for alpha in (MatModN(1, 0, 0, 2, 5), MatModN(1, 1, 0, 1, 5), MatModN(1, 2, 0, 3, 5),
                  MatModN(4, 3, 0, 2, 5)):
        assert (galois_conjugate_series(F, v, alpha, 10, path="a1a2")
                == galois_conjugate_series(F, v, alpha, 10, path="f3"))


def test_conjugation_path_errors():
    F = fricke(5)
    v = IndexVector(1, 0, 5)
    with pytest.raises(UsageError):
        galois_conjugate_series(F, v, MatModN(2, 1, 1, 1, 5), 5, path="a1a2")
    with pytest.raises(UsageError):
        galois_conjugate_series(F, v, MatModN.identity(5), 5, path="sideways")


def test_generator_identity_conjugate_is_the_member():
    F = siegel_generator(2, 1)
    v = IndexVector(1, 0, 2)
    assert galois_conjugate_series(F, v, MatModN.identity(2), 8) == family_series(F, v, 8)
