import pytest

from simflat.autiso import aut_group_K
from simflat.errors import BadParameter
from simflat.exact import identity, power, scale, same
from simflat.families import (
    admissible_primes,
    cp_co,
    cyclic_group,
    extraspecial_T,
    extraspecial_p,
    fermat_group,
    fitting_candidates,
    gl23_group,
    minkowski_bound,
    qd_group,
    quaternion_Q8,
    wall_H,
    wall_M,
    wall_h,
    wall_lattices,
)
from simflat.lattice import Lattice, determinant
from simflat.matgrp import (
    center_order,
    commutator_subgroup_order,
    p_core,
    positive_form,
    preserves,
    same_group,
)
from simflat.simfdb import default_db
from simflat.zorder import bravais_group


@pytest.mark.parametrize("m", [3, 4, 5, 8, 12])
def test_cyclic_orders(m):
    assert cyclic_group(m).order == m


def test_cyclic_rejects_small_m():
    with pytest.raises(BadParameter):
        cyclic_group(2)


def test_cp_co():
    G = cp_co(5)
    assert G.name == "C10"
    assert G.order == 10
    assert cp_co(7).order == 42
    with pytest.raises(BadParameter):
        cp_co(9)


@pytest.mark.parametrize("n", [4, 5])
def test_quasidihedral_relations(n):
    G = qd_group(n)
    assert G.order == 2 ** n
    x, y = G.generators
    I = identity(G.dim)
    assert same(power(x, 2 ** (n - 1)), I)
    assert same(y * y, I)
    assert same(y * x * y, power(x, 2 ** (n - 2) - 1))


def test_quasidihedral_group_is_its_own_K_automorphism_group():
    G = qd_group(5)
    x = G.generators[0]
    F = identity(8)
    assert all(preserves(g, F) for g in G.generators)
    A = aut_group_K(Lattice.standard(8), F, x - x.transpose())
    assert A.order == 32
    assert same_group(A.group(), G)


def test_wall_lattices_n2():
    pair = wall_lattices(2)
    assert determinant(pair.L, identity(4)) == 4
    assert determinant(pair.Lp, identity(4)) == 64


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wall_h_squares_to_two(n):
    h = wall_h(n)
    assert same(h * h, scale(identity(2 ** n), 2))


def test_wall_H2():
    assert wall_H(2).order == 1152


def test_wall_H2_has_an_extraspecial_core():
    O = p_core(wall_H(2).group(), 2)
    assert O.order == 32
    assert center_order(O) == 2
    assert commutator_subgroup_order(O) == 2
    assert O.contains(-identity(4))


def test_K_automorphisms_of_M2():
    W = wall_M(2)
    assert aut_group_K(W.lattice, W.form, W.skew).order == 2304


@pytest.mark.parametrize("n", [2, 3])
def test_wall_M_is_a_tensor_power(n):
    assert wall_M(n).lattice == wall_M(n - 1).tensor(wall_M(1)).lattice


def test_quaternion_models():
    assert quaternion_Q8().order == 8
    G = gl23_group()
    assert G.order == 48
    entry = next(e for e in default_db(4) if e.name == "GL23")
    assert all(preserves(g, entry.F) and preserves(g, entry.S) for g in G.generators)


def test_extraspecial():
    T = extraspecial_T(2)
    assert T.order == 32
    G, center = extraspecial_p(3, 1)
    assert G.order == 27
    assert G.dim == 6
    assert all(same(g * center, center * g) for g in G.generators)
    assert fermat_group(3, 1).order == 54
    with pytest.raises(BadParameter):
        fermat_group(7, 1)


@pytest.mark.slow
def test_fermat_bravais_group():
    G = fermat_group(3, 1)
    assert bravais_group(G, positive_form(G)).order == 1296


def test_minkowski_bound():
    assert minkowski_bound(1) == 2
    assert minkowski_bound(2) == 24
    assert minkowski_bound(4) == 5760


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_shipped_orders_divide_the_minkowski_bound(dim):
    entries = default_db(dim)
    assert entries
    assert all(minkowski_bound(dim) % e.order == 0 for e in entries)


def test_admissible_primes():
    assert admissible_primes(4) == [2, 3, 5]
    assert admissible_primes(12) == [2, 3, 5, 7, 13]


def test_fitting_candidates_dim2():
    names = [c.name for c in fitting_candidates(2)]
    assert names == ["C2", "C4", "C3"]
    # D8 has totally real commuting field, so it never fits on a single copy
    assert "D8" not in names


def test_fitting_candidates_dim12():
    found = {(c.p, c.degree, c.name) for c in fitting_candidates(12)}
    for expected in [
        (2, 4, "QD16"),
        (2, 4, "D8oC4"),
        (2, 4, "2+^(1+4)"),
        (3, 6, "3^(1+2)"),
        (7, 6, "C7"),
        (13, 12, "C13"),
    ]:
        assert expected in found
    assert all(12 % c.degree == 0 for c in fitting_candidates(12))
    with pytest.raises(BadParameter):
        fitting_candidates(7)
