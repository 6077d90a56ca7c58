import pytest

from simflat.enumerate import (
    FIELDS,
    normalized_primitive,
    pi_tilde,
    real_subfield,
    same_k_class,
    simf_supergroups,
)
from simflat.errors import UnsupportedField
from simflat.exact import identity, scale
from simflat.families import cp_co, cyclic_group
from simflat.lattice import IntegralPair, Lattice
from simflat.matgrp import end_algebra, positive_form, wreath


def test_pi_tilde():
    assert pi_tilde(24, "Q") == {2, 3}
    assert pi_tilde(10, FIELDS["Q(sqrt5)"]) == {2, 5}
    with pytest.raises(UnsupportedField):
        pi_tilde(10, "Q(sqrt3)")


def test_real_subfield(c4):
    assert real_subfield(end_algebra(c4), positive_form(c4)) == FIELDS["Q"]
    G = cp_co(5)
    assert real_subfield(end_algebra(G), positive_form(G)) == FIELDS["Q(sqrt5)"]


def test_normalized_primitive_rescales():
    pair = normalized_primitive(Lattice.standard(2), scale(identity(2), 2))
    assert pair.det == 1


@pytest.mark.parametrize("m", [4, 6])
def test_supergroups_of_small_cyclic_groups(m):
    results = simf_supergroups(cyclic_group(m))
    assert [A.order for A in results] == [m]


@pytest.mark.slow
def test_supergroups_of_c10():
    results = simf_supergroups(cp_co(5))
    assert [A.order for A in results] == [10]


def test_commuting_algebra_must_be_a_field(c4):
    with pytest.raises(UnsupportedField):
        simf_supergroups(wreath(c4, 2))


def test_k_classes_ignore_the_sign_of_e(J):
    p = IntegralPair(Lattice.standard(2), identity(2))
    assert same_k_class(p, J, p, -J)
    assert same_k_class(p, -J, p, J)
    q = IntegralPair(Lattice.standard(2), scale(identity(2), 2))
    assert not same_k_class(p, J, q, J)
