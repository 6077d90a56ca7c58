from fractions import Fraction

import pytest

from conftest import random_unimodular
from simflat.errors import BadParameter, MalformedEntry
from simflat.exact import (
    block_diag,
    diag,
    identity,
    is_positive_definite,
    is_symmetric,
    matrix,
    same,
    scale,
)
from simflat.families import cyclic_group, extraspecial_T, gl23_group, quaternion_Q8
from simflat.matgrp import (
    MatrixGroup,
    average_form,
    center_order,
    commutator_subgroup_order,
    conjugate,
    end_algebra,
    enumerate_group,
    fixed_forms,
    is_rationally_irreducible,
    is_subgroup,
    is_symplectic,
    p_core,
    positive_form,
    preserves,
    read_group,
    self_adjoint_elements,
    skew_adjoint_elements,
    tensor,
    totally_complex_elements,
    wreath,
    write_group,
)


def test_orders(c4, c6):
    assert c4.order == 4
    assert c6.order == 6
    assert cyclic_group(5).order == 5
    assert MatrixGroup([diag([1, -1])], 2).order == 2


def test_form_space_of_c4(c4, J):
    space = fixed_forms(c4)
    assert len(space.basis_sym) == 1
    assert len(space.basis_skew) == 1
    for F in space.all():
        assert all(preserves(g, F) for g in c4.generators)
    assert preserves(c4.generators[0], J)


def test_form_space_invariance_identities(c6):
    G = wreath(c6, 2)
    space = fixed_forms(G)
    for F in space.basis_sym:
        assert same(F, F.transpose())
    for S in space.basis_skew:
        assert same(S, -S.transpose())
    for g in G.generators:
        assert all(preserves(g, F) for F in space.all())


def test_symplectic():
    assert is_symplectic(cyclic_group(4))
    assert is_symplectic(cyclic_group(3))
    assert not is_symplectic(MatrixGroup([diag([1, -1])], 2))
    assert not is_symplectic(MatrixGroup([-identity(3)], 3))
    assert not is_symplectic(extraspecial_T(1))


def test_irreducible(c4):
    assert is_rationally_irreducible(c4)
    assert not is_rationally_irreducible(MatrixGroup([diag([1, -1])], 2))
    assert is_rationally_irreducible(wreath(c4, 2))


def test_end_algebra_of_cyclic_group():
    E = end_algebra(cyclic_group(5))
    assert E.dim == 4
    assert E.commutative and E.is_division
    F = positive_form(cyclic_group(5))
    assert len(skew_adjoint_elements(E, F)) == 2
    assert len(self_adjoint_elements(E, F)) == 2
    assert totally_complex_elements(E, F)


def test_positive_form_is_invariant(c6):
    F = positive_form(c6)
    assert is_positive_definite(F)
    assert all(preserves(g, F) for g in c6.generators)


def test_extraspecial_structure():
    T = extraspecial_T(2)
    assert T.order == 32
    assert center_order(T) == 2
    assert commutator_subgroup_order(T) == 2


def test_wreath_and_conjugate(c4):
    W = wreath(c4, 2)
    assert W.order == 32
    assert W.dim == 4
    U = matrix([[1, 1], [0, 1]])
    H = conjugate(c4, U)
    assert H.order == 4
    assert same(H.generators[0], U.inv() * c4.generators[0] * U)
    assert is_subgroup(MatrixGroup([-identity(2)], 2), c4)
    with pytest.raises(BadParameter):
        wreath(c4, 1)


def test_group_file_format(c4):
    text = write_group(c4)
    assert text.startswith("dim 2\ngens 1\n")
    G = read_group(text)
    assert same(G.generators[0], c4.generators[0])
    with pytest.raises(MalformedEntry):
        read_group("dim 2\ngens 2\n2 2\n0 1\n-1 0\n")
    with pytest.raises(MalformedEntry):
        read_group("dims 2\n")


def test_tensor_products(c4):
    D8 = extraspecial_T(1)
    T = tensor(D8, D8)
    assert (T.dim, T.order) == (4, 32)
    assert tensor(c4, c4).order == 8
    assert tensor(c4, MatrixGroup([identity(1)], 1)).order == 4


def test_average_form(c4):
    F = average_form(c4, diag([1, 2]))
    assert same(F, scale(identity(2), "3/2"))
    G = cyclic_group(5)
    F = average_form(G, identity(4))
    assert is_symmetric(F) and is_positive_definite(F)
    assert all(preserves(g, F) for g in G.generators)


def test_average_form_with_large_denominators(c4):
    a, b = Fraction(1, 3**40), Fraction(1, 5**40)
    F = average_form(c4, diag([a, b]))
    assert same(F, scale(identity(2), (a + b) / 2))


def test_order_is_conjugation_invariant(rng):
    for m in (5, 8, 12):
        G = cyclic_group(m)
        H = conjugate(G, random_unimodular(rng, G.dim))
        assert enumerate_group(H) == enumerate_group(G) == m


def test_symplectic_and_odd_dimension(c4):
    assert is_symplectic(wreath(c4, 2))
    assert not is_symplectic(MatrixGroup([-identity(3)], 3))


def test_end_algebra_of_quaternion_group():
    E = end_algebra(quaternion_Q8())
    assert (E.dim, E.center_dim) == (4, 1)
    assert E.is_division
    assert E.tag == "quaternion-definite"


def test_end_algebra_matrix_algebra_is_not_division(rng):
    D8 = extraspecial_T(1)
    G = conjugate(tensor(D8, MatrixGroup([identity(2)], 2)), random_unimodular(rng, 4))
    E = end_algebra(G)
    assert (E.dim, E.center_dim) == (4, 1)
    assert not E.is_division
    assert E.tag == "matrix-algebra-over-division"
    assert not is_rationally_irreducible(G)


def test_product_of_equal_fields_is_not_a_field(rng, J):
    I2 = identity(2)
    G = MatrixGroup([block_diag(J, I2), block_diag(I2, J)], 4)
    G = conjugate(G, random_unimodular(rng, 4))
    E = end_algebra(G)
    assert E.commutative and E.dim == 4
    assert not E.is_division
    assert not is_rationally_irreducible(G)


def test_p_core(c6):
    assert p_core(c6, 2).order == 2
    assert p_core(c6, 3).order == 3
    assert p_core(extraspecial_T(1), 2).order == 8
    assert p_core(extraspecial_T(1), 3).order == 1
    # GL2(3) has O_2 = Q8 and no normal 3-subgroup
    G = gl23_group()
    assert p_core(G, 2).order == 8
    assert p_core(G, 3).order == 1
