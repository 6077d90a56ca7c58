from fractions import Fraction

import pytest

from simflat.errors import MalformedEntry
from simflat.exact import (
    X,
    content,
    format_matrix,
    identity,
    is_positive_definite,
    matrix,
    minimal_polynomial,
    parse_matrices,
    parse_matrix,
    qq,
    same,
    square_class,
    to_fraction,
)


def test_qq_accepts_strings_and_fractions():
    assert to_fraction(qq("3/4")) == Fraction(3, 4)
    assert to_fraction(qq(Fraction(-2, 6))) == Fraction(-1, 3)
    assert to_fraction(qq(5)) == 5


def test_parse_and_format():
    M = parse_matrix("2 2\n1 1/2\n0 -3\n")
    assert to_fraction(M.to_list()[0][1]) == Fraction(1, 2)
    assert format_matrix(M) == "2 2\n1 1/2\n0 -3\n"
    assert same(parse_matrix(format_matrix(M)), M)


def test_parse_reports_line_numbers():
    with pytest.raises(MalformedEntry) as err:
        parse_matrix("2 2\n1 0\n0 x\n")
    assert err.value.line == 3
    with pytest.raises(MalformedEntry):
        parse_matrix("2 2\n1 0\n0\n")
    with pytest.raises(MalformedEntry):
        parse_matrix("")


def test_parse_matrices_reads_consecutive_blocks():
    mats = parse_matrices("2 2\n1 0\n0 1\n# skew\n2 2\n0 1\n-1 0\n")
    assert len(mats) == 2
    assert same(mats[1], matrix([[0, 1], [-1, 0]]))


def test_minimal_polynomial(J):
    assert minimal_polynomial(J).as_expr() == X**2 + 1
    assert minimal_polynomial(identity(3)).as_expr() == X - 1
    assert minimal_polynomial(matrix([[2, 0], [0, 3]])).degree() == 2


def test_content_and_square_class():
    assert content(matrix([[Fraction(1, 2), Fraction(1, 3)]])) == Fraction(1, 6)
    assert square_class(Fraction(12)) == (3, Fraction(2))
    assert square_class(Fraction(1, 8)) == (2, Fraction(1, 4))


def test_positive_definite(A2, J):
    assert is_positive_definite(A2)
    assert not is_positive_definite(matrix([[1, 2], [2, 1]]))
    assert not is_positive_definite(J)
