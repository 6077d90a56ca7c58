import random

import numpy as np
import pytest

from conftest import random_gram, random_unimodular
from simflat.autiso import (
    _reduce_generators,
    aut_group,
    aut_group_K,
    brute_force_aut_order,
    isometry,
    stabilize_lattices,
)
from simflat.errors import BadInput, GeneratorMismatch
from simflat.exact import block_diag, identity, matrix, same, scale
from simflat.lattice import FormTuple, Lattice
from simflat.matgrp import preserves


def test_small_automorphism_groups(A2, J, D4):
    assert aut_group(Lattice.standard(2), FormTuple(identity(2))).order == 8
    assert aut_group(Lattice.standard(2), FormTuple(A2)).order == 12
    assert aut_group(Lattice.standard(2), FormTuple(identity(2), (J,))).order == 4
    assert aut_group(Lattice.standard(4), FormTuple(D4)).order == 1152


def test_generators_preserve_lattice_and_forms(A2):
    L = Lattice.from_generators([[2, 0], [1, 1]])
    A = aut_group(L, FormTuple(A2))
    for g in A.generators:
        assert preserves(g, A2)
        assert Lattice.from_generators(L.basis * g) == L
    assert A.group().order == A.order


def test_aut_group_K_is_subgroup(J):
    F = identity(4)
    S = block_diag(J, J)
    K = aut_group_K(Lattice.standard(4), F, S)
    full = aut_group(Lattice.standard(4), FormTuple(F, (S,)))
    assert K.order == 32
    assert full.order % K.order == 0
    for g in K.generators:
        assert preserves(g, F) and preserves(g, S)


def test_isometry_between_A2_models(A2):
    B = matrix([[2, -1], [-1, 2]])
    T = isometry(Lattice.standard(2), FormTuple(A2), Lattice.standard(2), FormTuple(B))
    assert T is not None
    assert same(T * B * T.transpose(), A2)
    assert isometry(Lattice.standard(2), FormTuple(A2), Lattice.standard(2), FormTuple(scale(identity(2), 2))) is None


def test_engine_agrees_with_brute_force():
    rng = random.Random(2024)
    for _ in range(50):
        m = rng.randint(1, 3)
        G = random_gram(rng, m, 16)
        L = Lattice.standard(m)
        assert aut_group(L, FormTuple(G)).order == brute_force_aut_order(L, G)


def test_isometry_is_symmetric_and_conjugates_aut_groups():
    rng = random.Random(99)
    for _ in range(20):
        m = rng.randint(2, 3)
        G = random_gram(rng, m, 16)
        U = random_unimodular(rng, m)
        H = U * G * U.transpose()
        L = Lattice.standard(m)
        T = isometry(L, FormTuple(G), L, FormTuple(H))
        back = isometry(L, FormTuple(H), L, FormTuple(G))
        assert T is not None and back is not None
        assert same(T * H * T.transpose(), G)
        assert same(back * G * back.transpose(), H)
        A = aut_group(L, FormTuple(G))
        for g in A.generators:
            assert preserves(T.inv() * g * T, H)


def test_stabilize_lattices(J):
    A = aut_group(Lattice.standard(2), FormTuple(identity(2)))
    M = Lattice.from_generators([[1, 1], [2, 0]])
    assert stabilize_lattices(A, [M]).order == 8
    N = Lattice.from_generators([[2, 0], [0, 1]])
    assert stabilize_lattices(A, [N]).order == 4


def test_aut_group_K_needs_a_skew_form():
    with pytest.raises(BadInput):
        aut_group_K(Lattice.standard(2), identity(2), identity(2))


def test_generator_reduction_checks_the_order():
    rotation = np.array([[0, 1], [-1, 0]], dtype=np.int64)
    assert len(_reduce_generators([rotation, rotation @ rotation], 4, 100)) == 1
    with pytest.raises(GeneratorMismatch):
        _reduce_generators([rotation], 8, 100)
