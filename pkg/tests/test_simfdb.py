import random
from fractions import Fraction

import pytest
from sympy import Poly

from conftest import random_unimodular
from simflat.autiso import aut_group_K
from simflat.errors import BadInput, MalformedEntry, NoMatch
from simflat.exact import X, block_diag, identity, is_integral, matrix
from simflat.families import cp_co, extraspecial_T, gl23_group, hurwitz_map
from simflat.lattice import Lattice
from simflat.matgrp import MatrixGroup, conjugate, is_symplectic, preserves, tensor, wreath
from simflat.simfdb import (
    DbEntry,
    classes_distinct,
    db_dump,
    db_list,
    db_verify,
    db_verify_all,
    default_db,
    is_allowed_minpoly,
    parse_db,
    recognize,
)

C4_ENTRY = "2 4 C4\n1 0\n0 1\n0 1\n-1 0\n"


def test_shipped_entries():
    assert [e.name for e in default_db(2)] == ["C4", "C6"]
    rows = db_list(default_db(4))
    assert len(rows) == 6
    assert sum(r.primitive for r in rows) == 5
    assert {r.name for r in rows if not r.primitive} == {"C6wrS2"}
    assert default_db(6) == []


def test_parse_db():
    (entry,) = parse_db("# comment\n" + C4_ENTRY)
    assert (entry.dim, entry.order, entry.name, entry.line) == (2, 4, "C4", 2)
    assert parse_db("") == []
    assert parse_db(db_dump(default_db(4)))[2].name == default_db(4)[2].name


@pytest.mark.parametrize(
    "text, line",
    [
        ("2 x C4\n1 0\n0 1\n0 1\n-1 0\n", 1),
        ("2 4 C4\n1 0\n0 1\n0 1\n", 4),
        ("2 4 C4\n1 1\n0 1\n0 1\n-1 0\n", 2),
        ("2 4 C4\n1 0\n0 1\n0 1\n1 0\n", 4),
        ("2 4 C4\n1 0\n0 a\n0 1\n-1 0\n", 3),
    ],
)
def test_parse_db_errors(text, line):
    with pytest.raises(MalformedEntry) as err:
        parse_db(text)
    assert err.value.line == line


@pytest.mark.parametrize("dim", [2, 4])
def test_verify_shipped(dim):
    entries = default_db(dim)
    reports = db_verify_all(entries)
    assert all(r.passed for r in reports), [(r.name, r.failures()) for r in reports]
    assert [r.order_found for r in reports] == [e.order for e in entries]
    assert classes_distinct(entries) == []


DIM4_ORDERS = {
    "D8tC4.S3": 96,
    "C4tA2": 24,
    "GL23": 48,
    "SL23oC3": 72,
    "C10": 10,
    "C6wrS2": 72,
}


def _dim4_models(c4, c6) -> dict[str, MatrixGroup]:
    one, i = (1, 0, 0, 0), (0, 1, 0, 0)
    half = Fraction(1, 2)
    omega = (-half, half, half, half)
    sl23 = [hurwitz_map(i, one), hurwitz_map(omega, one)]
    conj_1i = hurwitz_map((1, 1, 0, 0), (half, -half, 0, 0))
    d12 = MatrixGroup(c6.generators + [matrix([[0, 1], [1, 0]])], 2)
    return {
        "D8tC4.S3": MatrixGroup(sl23 + [hurwitz_map(one, i), conj_1i], 4),
        "C4tA2": tensor(c4, d12),
        "GL23": gl23_group(),
        "SL23oC3": MatrixGroup(sl23 + [hurwitz_map(one, omega)], 4),
        "C10": cp_co(5),
        "C6wrS2": wreath(c6, 2),
    }


def test_dim4_orders_from_explicit_generators(c4, c6):
    entries = default_db(4)
    assert [e.name for e in entries] == list(DIM4_ORDERS)
    models = _dim4_models(c4, c6)
    for e in entries:
        assert MatrixGroup(e.automorphisms.generators, 4).order == DIM4_ORDERS[e.name]
        assert models[e.name].order == DIM4_ORDERS[e.name], e.name
        assert is_symplectic(models[e.name])


@pytest.mark.slow
def test_verify_dim8():
    reports = db_verify_all(default_db(8))
    assert all(r.passed for r in reports)
    assert all(r.skipped == ["minimal_determinant"] for r in reports)


def test_tampered_order_fails(J):
    report = db_verify(DbEntry(2, identity(2), J, 8, "bad"))
    assert not report.passed
    assert report.failures() == ["order"]
    assert report.order_found == 4


def test_duplicate_entries_clash():
    entries = parse_db(C4_ENTRY + "\n" + C4_ENTRY.replace("C4\n", "C4b\n", 1))
    assert classes_distinct(entries) == [("C4", "C4b")]


@pytest.mark.parametrize(
    "poly, allowed",
    [
        (X**2 + 1, True),
        (X**2 + 2, True),
        (X**2 + 4, False),
        (X**2 - 2, False),
        (X**4 + 5 * X**2 + 5, True),
        (X**4 + 4 * X**2 + 2, True),
        (X**4 + 1, False),
    ],
)
def test_allowed_minpolys(poly, allowed):
    assert is_allowed_minpoly(Poly(poly, X, domain="QQ")) is allowed


@pytest.mark.parametrize(
    "dim, name",
    [(2, e.name) for e in default_db(2)] + [(4, e.name) for e in default_db(4)],
)
def test_recognize_every_shipped_class(dim, name):
    entry = next(e for e in default_db(dim) if e.name == name)
    G = conjugate(entry.group(), random_unimodular(random.Random(7), dim))
    result = recognize(G)
    assert result.name == name
    T = result.conjugator
    for g in G.generators:
        h = T.inv() * g * T
        assert is_integral(h)
        assert preserves(h, entry.F) and preserves(h, entry.S)


def test_recognize_rejects_bad_input():
    with pytest.raises(BadInput):
        recognize(extraspecial_T(1))


def test_wreath_of_c4_is_not_listed(c4):
    with pytest.raises(NoMatch):
        recognize(wreath(c4, 2), default_db(4))


def test_invariant_pair_choice_changes_the_group(J):
    # the sum-even sublattice of Z^4 carries a larger K-automorphism group
    D4 = Lattice.span([[2, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]], 4)
    S = block_diag(J, J)
    assert aut_group_K(D4, identity(4), S).order == 96
    assert aut_group_K(Lattice.standard(4), identity(4), S).order == 32
