"""
Exact matrices
==============

Helpers around sympy's ``DomainMatrix`` over ``QQ``. Every matrix in the
package (group elements, forms, lattice bases) is an ``ExactMatrix``: a
``DomainMatrix`` with rational entries, never rounded.

Also holds the shared plain-text matrix format::

    2 2
    1 1/2
    0 -3
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np
from sympy import Poly, Rational, Symbol, factorint
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from simflat.errors import DimMismatch, MalformedEntry

ExactMatrix = DomainMatrix

X = Symbol("X")


def qq(x):
    """Convert ints, Fractions, sympy rationals or "p/q" strings to a QQ element."""
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, np.integer):
        x = int(x)
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, Rational):
        return QQ(int(x.p), int(x.q))
    return QQ.convert(x)


def numer(a) -> int:
    return int(QQ.numer(a))


def denom(a) -> int:
    return int(QQ.denom(a))


def to_fraction(a) -> Fraction:
    return Fraction(numer(a), denom(a))


def matrix(rows, cols: int | None = None) -> ExactMatrix:
    """Build an ExactMatrix from nested sequences (or pass a DomainMatrix through)."""
    if isinstance(rows, DomainMatrix):
        return rows.convert_to(QQ)
    if isinstance(rows, np.ndarray):
        rows = rows.tolist()
    data = [[qq(x) for x in row] for row in rows]
    if cols is None:
        if not data:
            raise DimMismatch("cannot infer the column count of an empty matrix")
        cols = len(data[0])
    if any(len(row) != cols for row in data):
        raise DimMismatch("ragged rows")
    return DomainMatrix(data, (len(data), cols), QQ)


def identity(n: int) -> ExactMatrix:
    return DomainMatrix(
        [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)], (n, n), QQ
    )


def zeros(r: int, c: int) -> ExactMatrix:
    return DomainMatrix([[QQ(0)] * c for _ in range(r)], (r, c), QQ)


def same(A: ExactMatrix, B: ExactMatrix) -> bool:
    """Entry-wise equality, independent of the internal storage format."""
    return A.shape == B.shape and A.to_list() == B.to_list()


def entries(M: ExactMatrix) -> list[list]:
    return M.to_list()


def key(M: ExactMatrix) -> tuple:
    """Hashable exact fingerprint of a matrix."""
    return tuple(tuple(row) for row in M.to_list())


def scale(M: ExactMatrix, c) -> ExactMatrix:
    c = qq(c)
    rows, cols = M.shape
    return DomainMatrix([[c * a for a in row] for row in M.to_list()], (rows, cols), QQ)


def diag(values: Sequence) -> ExactMatrix:
    n = len(values)
    return DomainMatrix(
        [[qq(values[i]) if i == j else QQ(0) for j in range(n)] for i in range(n)], (n, n), QQ
    )


def block_diag(*blocks: ExactMatrix) -> ExactMatrix:
    n = sum(b.shape[0] for b in blocks)
    m = sum(b.shape[1] for b in blocks)
    rows = [[QQ(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.to_list()):
            for j, a in enumerate(row):
                rows[r0 + i][c0 + j] = a
        r0 += b.shape[0]
        c0 += b.shape[1]
    return DomainMatrix(rows, (n, m), QQ)


def kron(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Kronecker product, index (i*rows(B) + k, j*cols(B) + l) = A[i][j] * B[k][l]."""
    ra, ca = A.shape
    rb, cb = B.shape
    a, b = A.to_list(), B.to_list()
    rows = [
        [a[i][j] * b[k][l] for j in range(ca) for l in range(cb)]
        for i in range(ra)
        for k in range(rb)
    ]
    return DomainMatrix(rows, (ra * rb, ca * cb), QQ)


def vstack(mats: Sequence[ExactMatrix], cols: int | None = None) -> ExactMatrix:
    rows = [row for M in mats for row in M.to_list()]
    if cols is None:
        cols = mats[0].shape[1]
    return DomainMatrix(rows, (len(rows), cols), QQ)


def flatten(M: ExactMatrix) -> list:
    """Row-major vectorization."""
    return [a for row in M.to_list() for a in row]


def unflatten(v: Sequence, n: int) -> ExactMatrix:
    return DomainMatrix([list(v[i * n:(i + 1) * n]) for i in range(n)], (n, n), QQ)


def trace(M: ExactMatrix):
    rows = M.to_list()
    return sum((rows[i][i] for i in range(len(rows))), QQ(0))


def denominator(M: ExactMatrix) -> int:
    return lcm(1, *(denom(a) for row in M.to_list() for a in row))


def is_integral(M: ExactMatrix) -> bool:
    return all(denom(a) == 1 for row in M.to_list() for a in row)


def to_int_rows(M: ExactMatrix) -> list[list[int]]:
    if not is_integral(M):
        raise ValueError("matrix has non-integral entries")
    return [[numer(a) for a in row] for row in M.to_list()]


def to_numpy(M: ExactMatrix) -> np.ndarray:
    """Integral matrix as an int64 array."""
    return np.array(to_int_rows(M), dtype=np.int64).reshape(M.shape)


def from_numpy(a: np.ndarray) -> ExactMatrix:
    return matrix([[int(x) for x in row] for row in a.tolist()], cols=a.shape[1])


def content(M: ExactMatrix) -> Fraction:
    """Positive rational gcd of all entries (0 for the zero matrix)."""
    nums = [numer(a) for row in M.to_list() for a in row]
    dens = [denom(a) for row in M.to_list() for a in row]
    g = gcd(*nums)
    if g == 0:
        return Fraction(0)
    return Fraction(g, lcm(1, *dens))


def square_class(q: Fraction) -> tuple[int, Fraction]:
    """Write a positive rational q as s * r**2 with s a squarefree integer."""
    if q <= 0:
        raise ValueError("square_class expects a positive rational")
    n = q.numerator * q.denominator
    s, r = 1, 1
    for p, e in factorint(n).items():
        if e % 2:
            s *= p
        r *= p ** (e // 2)
    return s, Fraction(r, q.denominator)


def is_symmetric(M: ExactMatrix) -> bool:
    return same(M, M.transpose())


def is_skew(M: ExactMatrix) -> bool:
    return same(M, -M.transpose())


def is_positive_definite(M: ExactMatrix) -> bool:
    if M.shape[0] != M.shape[1] or not is_symmetric(M):
        return False
    return bool(M.to_Matrix().is_positive_definite)


def is_invertible(M: ExactMatrix) -> bool:
    return M.shape[0] == M.shape[1] and M.det() != 0


def commutes(A: ExactMatrix, B: ExactMatrix) -> bool:
    return same(A * B, B * A)


def power(A: ExactMatrix, k: int) -> ExactMatrix:
    result = identity(A.shape[0])
    base = A
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def poly_eval(poly: Poly, A: ExactMatrix) -> ExactMatrix:
    """Horner evaluation of a univariate polynomial at a square matrix."""
    n = A.shape[0]
    result = zeros(n, n)
    for c in poly.all_coeffs():
        result = result * A + scale(identity(n), qq(c))
    return result


def minimal_polynomial(A: ExactMatrix) -> Poly:
    """Monic minimal polynomial over QQ, from the first linear dependence among powers."""
    n = A.shape[0]
    powers = [flatten(identity(n))]
    current = identity(n)
    for k in range(1, n + 1):
        current = current * A
        powers.append(flatten(current))
        columns = DomainMatrix([list(col) for col in zip(*powers)], (n * n, k + 1), QQ)
        null = columns.nullspace().to_list()
        if null:
            coeffs = null[0]
            lead = coeffs[-1]
            monic = [QQ.to_sympy(c / lead) for c in reversed(coeffs)]
            return Poly(monic, X, domain="QQ")
    raise AssertionError("Cayley-Hamilton bound exceeded")


def solve_left(B: ExactMatrix, Y: ExactMatrix) -> ExactMatrix:
    """Return C with C * B = Y for square invertible B."""
    return Y * B.inv()


def parse_matrix(text: str, line_offset: int = 0) -> ExactMatrix:
    """Parse the shared text format: a "rows cols" header, then row-major entries."""
    lines = [
        (i + 1 + line_offset, ln.split("#", 1)[0].strip())
        for i, ln in enumerate(text.splitlines())
    ]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise MalformedEntry("empty matrix text", line_offset + 1)
    header_line, header = lines[0]
    try:
        r, c = (int(x) for x in header.split())
    except ValueError:
        raise MalformedEntry(f"expected 'rows cols' header, got {header!r}", header_line)
    tokens = []
    for lineno, ln in lines[1:]:
        tokens.extend((lineno, tok) for tok in ln.split())
    if len(tokens) != r * c:
        where = tokens[-1][0] if tokens else header_line
        raise MalformedEntry(f"expected {r * c} entries, found {len(tokens)}", where)
    values = []
    for lineno, tok in tokens:
        try:
            values.append(qq(tok))
        except (ValueError, ZeroDivisionError):
            raise MalformedEntry(f"bad matrix entry {tok!r}", lineno)
    return DomainMatrix([values[i * c:(i + 1) * c] for i in range(r)], (r, c), QQ)


def parse_matrices(text: str) -> list[ExactMatrix]:
    """Consecutive matrices in the shared text format, each with its own header."""
    tokens = [
        (lineno, tok)
        for lineno, line in enumerate(text.splitlines(), start=1)
        for tok in line.split("#", 1)[0].split()
    ]
    mats = []
    pos = 0
    while pos < len(tokens):
        if pos + 2 > len(tokens):
            raise MalformedEntry("incomplete matrix header", tokens[pos][0])
        try:
            r, c = int(tokens[pos][1]), int(tokens[pos + 1][1])
        except ValueError:
            raise MalformedEntry(f"expected 'rows cols' header at {tokens[pos][1]!r}", tokens[pos][0])
        body = tokens[pos + 2:pos + 2 + r * c]
        if len(body) != r * c:
            raise MalformedEntry(f"expected {r * c} entries, found {len(body)}", tokens[-1][0])
        values = []
        for lineno, tok in body:
            try:
                values.append(qq(tok))
            except (ValueError, ZeroDivisionError):
                raise MalformedEntry(f"bad matrix entry {tok!r}", lineno)
        mats.append(DomainMatrix([values[i * c:(i + 1) * c] for i in range(r)], (r, c), QQ))
        pos += 2 + r * c
    return mats


def format_entry(a) -> str:
    n, d = numer(a), denom(a)
    return str(n) if d == 1 else f"{n}/{d}"


def format_matrix(M: ExactMatrix) -> str:
    rows, cols = M.shape
    lines = [f"{rows} {cols}"]
    for row in M.to_list():
        lines.append(" ".join(format_entry(a) for a in row))
    return "\n".join(lines) + "\n"


def to_strings(M: ExactMatrix) -> list[list[str]]:
    return [[format_entry(a) for a in row] for row in M.to_list()]


def zz_matrix(rows: Iterable[Sequence[int]], cols: int) -> DomainMatrix:
    data = [[ZZ(int(x)) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), cols), ZZ)
