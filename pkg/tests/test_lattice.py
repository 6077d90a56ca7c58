import random

import pytest

from conftest import random_gram
from simflat.autiso import aut_group
from simflat.errors import NotIntegral, RankDeficient
from simflat.exact import identity, is_integral, matrix, same, scale
from simflat.lattice import (
    FormTuple,
    IntegralPair,
    Lattice,
    contains,
    determinant,
    discriminant_group,
    dual_lattice,
    index,
    intersect,
    is_normalized,
    lattice_sum,
    normalize_pair,
    perp_decompose,
    scale_to_primitive,
    short_vectors,
)


def test_hermite_basis_is_canonical():
    a = Lattice.from_generators([[2, 0], [1, 1]])
    b = Lattice.from_generators([[1, 1], [3, 1], [0, 2]])
    assert a == b
    with pytest.raises(RankDeficient):
        Lattice.from_generators([[1, 1], [2, 2]])


def test_dual_sum_intersection():
    Z2 = Lattice.standard(2)
    L = Lattice.from_generators([[2, 0], [0, 1]])
    assert dual_lattice(L, identity(2)) == Lattice.from_generators([["1/2", 0], [0, 1]])
    assert lattice_sum(L, Lattice.from_generators([[1, 0], [0, 2]])) == Z2
    assert intersect(L, Lattice.from_generators([[1, 0], [0, 2]])) == Lattice.from_generators([[2, 0], [0, 2]])
    assert contains(Z2, L) and not contains(L, Z2)
    assert index(Z2, L) == 2


def test_determinant_and_discriminant_group(A2):
    Z2 = Lattice.standard(2)
    assert determinant(Z2, A2) == 3
    assert discriminant_group(Z2, A2) == [3]
    assert discriminant_group(Z2, scale(identity(2), 4)) == [4, 4]


def test_short_vectors_of_A2(A2):
    vectors = short_vectors(Lattice.standard(2), A2, 2)
    assert len(vectors) == 3


def test_integral_pair_rejects_fractional_gram():
    with pytest.raises(NotIntegral):
        IntegralPair(Lattice.standard(2), scale(identity(2), "1/2"))


def test_scale_to_primitive(A2):
    pair = scale_to_primitive(Lattice.standard(2), scale(A2, 6))
    assert same(pair.form, A2)


def test_normalize_pair_reaches_unimodular():
    pair = IntegralPair(Lattice.from_generators([[2, 0], [0, 2]]), identity(2))
    q = normalize_pair(pair)
    assert q.det == 1
    assert is_normalized(q)
    assert not is_normalized(pair)


def test_normalized_pairs_are_fixed(D4, A2):
    for F in (D4, A2):
        pair = IntegralPair(Lattice.standard(F.shape[0]), F)
        assert is_normalized(pair)
        assert normalize_pair(pair) == pair


def test_normalize_is_idempotent_and_keeps_automorphisms():
    rng = random.Random(7)
    for _ in range(100):
        m = rng.randint(1, 4)
        G = scale(random_gram(rng, m, 64), rng.choice([1, 2, 3, 4]))
        pair = IntegralPair(Lattice.standard(m), G)
        q = normalize_pair(pair)
        assert is_normalized(q)
        assert normalize_pair(q) == q
        if m <= 3:
            for g in aut_group(pair.lattice, FormTuple(G)).generators:
                assert Lattice.from_generators(q.lattice.basis * g) == q.lattice


def test_perp_decompose(J, A2):
    Z2 = Lattice.standard(2)
    assert len(perp_decompose(Z2, [identity(2)])) == 2
    assert len(perp_decompose(Z2, [identity(2), J])) == 1
    assert len(perp_decompose(Z2, [A2])) == 1
    F = matrix([[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 2, 1], [0, 0, 1, 2]])
    parts = perp_decompose(Lattice.standard(4), [F])
    assert sorted(p.rank for p in parts) == [2, 2]
    assert all(is_integral(p.basis) for p in parts)
