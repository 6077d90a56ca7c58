import pytest

from simflat.cli import FAILURE, NEGATIVE, NO_MATCH, OK, main
from simflat.config import get_settings
from simflat.exact import format_matrix, identity, matrix
from simflat.families import cyclic_group, extraspecial_T
from simflat.matgrp import read_group, wreath, write_group


@pytest.fixture
def group_file(tmp_path):
    def write(G, name="g.txt"):
        path = tmp_path / name
        path.write_text(write_group(G))
        return str(path)
    return write


def test_order(group_file, capsys):
    assert main(["order", group_file(cyclic_group(5))]) == OK
    assert capsys.readouterr().out.strip() == "5"


def test_symplectic(group_file, capsys):
    assert main(["symplectic", group_file(cyclic_group(4))]) == OK
    assert main(["symplectic", group_file(extraspecial_T(1))]) == NEGATIVE
    assert capsys.readouterr().out.split() == ["yes", "no"]


def test_isometry(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text(format_matrix(matrix([[2, 1], [1, 2]])))
    b.write_text(format_matrix(matrix([[2, -1], [-1, 2]])))
    assert main(["isometry", str(a), str(b)]) == OK
    b.write_text(format_matrix(identity(2)))
    assert main(["isometry", str(a), str(b)]) == NEGATIVE
    assert capsys.readouterr().out.strip().endswith("none")


def test_db_list(capsys):
    path = get_settings().db_dir / "simf_dim2.txt"
    assert main(["db", "list", str(path)]) == OK
    assert capsys.readouterr().out.splitlines() == ["2 4 C4 primitive", "2 6 C6 primitive"]


def test_db_verify(capsys):
    path = get_settings().db_dir / "simf_dim2.txt"
    assert main(["db", "verify", str(path)]) == OK
    assert "FAIL" not in capsys.readouterr().out


def test_recognize_without_match(group_file, capsys):
    path = get_settings().db_dir / "simf_dim4.txt"
    assert main(["db", "recognize", group_file(wreath(cyclic_group(4), 2)), str(path)]) == NO_MATCH
    assert "no match" in capsys.readouterr().err


def test_malformed_input(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("dim 2\ngens 1\n2 2\n0 1\n-1\n")
    assert main(["order", str(path)]) == FAILURE
    assert "line" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["order", "/nonexistent/group.txt"]) == FAILURE


def test_construct(capsys):
    assert main(["construct", "cpco", "5"]) == OK
    G = read_group(capsys.readouterr().out)
    assert G.order == 10
    assert main(["construct", "cyclic"]) == FAILURE
