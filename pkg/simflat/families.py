"""
Families
========

Explicit groups and lattices: cyclotomic groups, the quasidihedral groups,
extraspecial groups in their rational representations, Wall's lattices
L_n, L'_n and their sqrt(-2) combination M_n, quaternion models of Q8 and
GL2(3), and the number-theoretic helpers (Minkowski bound, admissible
primes, Fitting subgroup candidates).

All cyclotomic arithmetic is matrix arithmetic over Q: an element of
Z[zeta_m] acts on the power basis 1, zeta, ..., zeta^(d-1) by rows.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import cyclotomic_poly, isprime, primerange, primitive_root, totient

from simflat.autiso import AutResult, aut_group, stabilize_lattices
from simflat.errors import BadParameter
from simflat.exact import (
    X,
    ExactMatrix,
    block_diag,
    identity,
    kron,
    matrix,
    power,
    scale,
)
from simflat.lattice import FormTuple, Lattice
from simflat.matgrp import MatrixGroup

logger = logging.getLogger(__name__)

FERMAT_PRIMES = (3, 5, 17, 257, 65537)


def companion(coeffs: list[int]) -> ExactMatrix:
    """Multiplication by a root of the monic polynomial with coefficients high to low."""
    d = len(coeffs) - 1
    rows = [[1 if j == i + 1 else 0 for j in range(d)] for i in range(d - 1)]
    rows.append([-int(c) for c in reversed(coeffs[1:])])
    return matrix(rows, d)


def _cyclotomic_companion(m: int) -> ExactMatrix:
    return companion(cyclotomic_poly(m, X, polys=True).all_coeffs())


def _galois_matrix(p: int, k: int) -> ExactMatrix:
    """zeta -> zeta^k on the power basis of Z[zeta_p]."""
    d = p - 1
    rows = []
    for i in range(d):
        e = (i * k) % p
        rows.append([-1] * d if e == d else [1 if j == e else 0 for j in range(d)])
    return matrix(rows, d)


# --- cyclic and metacyclic groups -----------------------------------------


def cyclic_group(m: int) -> MatrixGroup:
    if m < 3:
        raise BadParameter(f"cyclic_group needs m >= 3, got {m}")
    return MatrixGroup([_cyclotomic_companion(m)], name=f"C{m}")


def cp_co(p: int) -> MatrixGroup:
    """+-C_p : C_o with o the odd part of p - 1, in GL_(p-1)."""
    if p < 5 or not isprime(p):
        raise BadParameter(f"cp_co needs a prime p >= 5, got {p}")
    o = p - 1
    while o % 2 == 0:
        o //= 2
    Z = _cyclotomic_companion(p)
    gens = [Z, -identity(p - 1)]
    if o > 1:
        k = pow(primitive_root(p), (p - 1) // o, p)
        gens.append(_galois_matrix(p, k))
        name = f"+-C{p}:C{o}"
    else:
        name = f"C{2 * p}"
    return MatrixGroup(gens, p - 1, name)


def qd_group(n: int) -> MatrixGroup:
    """Quasidihedral group <x, y | x^(2^(n-1)), y^2, x^y = x^(2^(n-2) - 1)> of order 2^n."""
    if n < 4:
        raise BadParameter(f"qd_group needs n >= 4, got {n}")
    d = 2 ** (n - 2)
    x = companion([1] + [0] * (d - 1) + [1])
    k = d - 1
    rows = []
    for i in range(d):
        e = (i * k) % (2 * d)
        sign, pos = (1, e) if e < d else (-1, e - d)
        rows.append([sign if j == pos else 0 for j in range(d)])
    y = matrix(rows, d)
    return MatrixGroup([x, y], d, f"QD{2 ** n}")


# --- extraspecial groups ---------------------------------------------------


def extraspecial_T(n: int) -> MatrixGroup:
    """2_+^(1+2n) as n-fold tensor product of D8 = <[[0,1],[1,0]], diag(1,-1)>."""
    if n < 1:
        raise BadParameter(f"extraspecial_T needs n >= 1, got {n}")
    a = matrix([[0, 1], [1, 0]])
    b = matrix([[1, 0], [0, -1]])
    gens = []
    for t in range(n):
        left, right = identity(2 ** t), identity(2 ** (n - t - 1))
        gens += [kron(kron(left, g), right) for g in (a, b)]
    name = "D8" if n == 1 else f"2+^(1+{2 * n})"
    return MatrixGroup(gens, 2 ** n, name)


def _cyclic_shift(p: int) -> ExactMatrix:
    return matrix([[1 if j == (i + 1) % p else 0 for j in range(p)] for i in range(p)], p)


def extraspecial_p(p: int, n: int) -> tuple[MatrixGroup, ExactMatrix]:
    """p^(1+2n) of exponent p over Q, in dimension p^n (p - 1).

    The complex representation on C^(p^n) (shifts and diagonal zeta powers
    in each tensor factor) has entries in Z[zeta_p]; each entry is replaced
    by its companion block. Returns the group and the matrix of the central
    element acting as zeta_p.
    """
    if p < 3 or not isprime(p):
        raise BadParameter(f"extraspecial_p needs an odd prime, got {p}")
    if n < 1:
        raise BadParameter(f"extraspecial_p needs n >= 1, got {n}")
    Z = _cyclotomic_companion(p)
    inner = identity(p - 1)
    size = p ** n
    gens = []
    for t in range(n):
        shift = kron(kron(identity(p ** t), _cyclic_shift(p)), identity(p ** (n - t - 1)))
        gens.append(kron(shift, inner))
        stride = p ** (n - t - 1)
        gens.append(block_diag(*[power(Z, (i // stride) % p) for i in range(size)]))
    center = kron(identity(size), Z)
    name = f"{p}^(1+{2 * n})"
    return MatrixGroup(gens, size * (p - 1), name), center


def fermat_group(p: int, n: int) -> MatrixGroup:
    """+-p^(1+2n) for a Fermat prime p."""
    if p not in FERMAT_PRIMES:
        raise BadParameter(f"{p} is not a Fermat prime")
    T, _ = extraspecial_p(p, n)
    return MatrixGroup(T.generators + [-identity(T.dim)], T.dim, f"+-{T.name}")


# --- Wall's lattices -------------------------------------------------------


@lru_cache(maxsize=None)
def affine_subspaces(n: int) -> tuple[frozenset, ...]:
    """All affine subspaces of F_2^n; v is encoded as the integer sum v_i 2^(i-1)."""
    linear = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        grown = []
        for S in frontier:
            for v in range(1 << n):
                if v in S:
                    continue
                T = S | frozenset(s ^ v for s in S)
                if T not in linear:
                    linear.add(T)
                    grown.append(T)
        frontier = grown
    affine = {frozenset(s ^ w for s in S) for S in linear for w in range(1 << n)}
    return tuple(sorted(affine, key=lambda U: (len(U), sorted(U))))


def _dim(U: frozenset) -> int:
    return len(U).bit_length() - 1


def _chi(U: frozenset, n: int, c=1) -> list[int]:
    return [c if j in U else 0 for j in range(1 << n)]


@dataclass(frozen=True)
class WallPair:
    n: int
    L: Lattice
    Lp: Lattice


def wall_lattices(n: int) -> WallPair:
    """L_n and L'_n spanned by 2^floor((n - dim U + delta)/2) chi_U, delta = 0 and 1."""
    if n < 1:
        raise BadParameter(f"wall_lattices needs n >= 1, got {n}")
    subspaces = affine_subspaces(n)
    spans = []
    for delta in (0, 1):
        rows = [_chi(U, n, 2 ** ((n - _dim(U) + delta) // 2)) for U in subspaces]
        spans.append(Lattice.span(rows, 1 << n))
    return WallPair(n, spans[0], spans[1])


def wall_h(n: int) -> ExactMatrix:
    """h_n = [[1, 1], [1, -1]] (x) I_(2^(n-1)), with h_n^2 = 2 I."""
    if n < 1:
        raise BadParameter(f"wall_h needs n >= 1, got {n}")
    return kron(matrix([[1, 1], [1, -1]]), identity(2 ** (n - 1)))


def wall_H(n: int) -> AutResult:
    """H_n = Aut(L_n, I) intersected with Aut(L'_n, I)."""
    pair = wall_lattices(n)
    A = aut_group(pair.L, FormTuple(identity(1 << n)))
    H = stabilize_lattices(A, [pair.Lp])
    logger.info(f"H_{n}: order {H.order}")
    return H


@dataclass(frozen=True)
class GaussLattice2:
    """A Z[sqrt(-2)]-lattice blown up to Q: z = a + b sqrt(-2) has coordinates (a, b).

    ``action`` is multiplication by sqrt(-2), ``form`` is (z, w) -> Re(z w-bar).
    """

    n: int
    lattice: Lattice
    action: ExactMatrix
    form: ExactMatrix

    @property
    def skew(self) -> ExactMatrix:
        return self.action * self.form

    def tensor(self, other: "GaussLattice2") -> "GaussLattice2":
        """Z[sqrt(-2)]-tensor product, coordinates ordered as in kron."""
        h1, h2 = 1 << self.n, 1 << other.n
        rows = []
        for r1 in self.lattice.rows():
            a1, b1 = matrix([r1[:h1]], h1), matrix([r1[h1:]], h1)
            for r2 in other.lattice.rows():
                a2, b2 = matrix([r2[:h2]], h2), matrix([r2[h2:]], h2)
                a = kron(a1, a2) - scale(kron(b1, b2), 2)
                b = kron(a1, b2) + kron(b1, a2)
                rows.append(a.to_list()[0] + b.to_list()[0])
        n = self.n + other.n
        return _gauss(n, Lattice.span(rows, 2 << n))


def _gauss(n: int, L: Lattice) -> GaussLattice2:
    half = 1 << n
    rows = [[1 if j == half + i else 0 for j in range(2 * half)] for i in range(half)]
    rows += [[-2 if j == i else 0 for j in range(2 * half)] for i in range(half)]
    I = identity(half)
    return GaussLattice2(n, L, matrix(rows, 2 * half), block_diag(I, scale(I, 2)))


def wall_M(n: int) -> GaussLattice2:
    """M_n = sqrt(-2) L'_n + L_n, spanned over Z[sqrt(-2)] by sqrt(-2)^(n - dim U) chi_U."""
    if n < 1:
        raise BadParameter(f"wall_M needs n >= 1, got {n}")
    half = 1 << n
    rows = []
    for U in affine_subspaces(n):
        k = n - _dim(U)
        c = (-2) ** (k // 2)
        zero = [0] * half
        a, b = (_chi(U, n, c), zero) if k % 2 == 0 else (zero, _chi(U, n, c))
        rows.append(a + b)
        rows.append([-2 * x for x in b] + a)
    return _gauss(n, Lattice.span(rows, 2 * half))


# --- quaternion models -----------------------------------------------------


def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def _q(*xs):
    return tuple(Fraction(x) for x in xs)


LIPSCHITZ_BASIS = (_q(1, 0, 0, 0), _q(0, 1, 0, 0), _q(0, 0, 1, 0), _q(0, 0, 0, 1))
HURWITZ_BASIS = (
    _q(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    _q(0, 1, 0, 0),
    _q(0, 0, 1, 0),
    _q(0, 0, 0, 1),
)


def _quaternion_map(f, basis) -> ExactMatrix:
    """Matrix of x -> f(x) with respect to ``basis``, acting on rows."""
    B = matrix([list(b) for b in basis], 4)
    images = matrix([list(f(b)) for b in basis], 4)
    return images * B.inv()


def hurwitz_map(left, right) -> ExactMatrix:
    """Matrix of x -> left * x * right on the Hurwitz order (quaternions as 4-tuples)."""
    a, b = _q(*left), _q(*right)
    return _quaternion_map(lambda x: _qmul(_qmul(a, x), b), HURWITZ_BASIS)


def quaternion_Q8() -> MatrixGroup:
    """Q8 as left multiplications by i and j on the Lipschitz order."""
    gens = [
        _quaternion_map(lambda x, u=u: _qmul(u, x), LIPSCHITZ_BASIS)
        for u in (_q(0, 1, 0, 0), _q(0, 0, 1, 0))
    ]
    return MatrixGroup(gens, 4, "Q8")


def gl23_group() -> MatrixGroup:
    """GL2(3) on the Hurwitz order: left multiplication by SL2(3) and x -> (1+i) x (i+j)/2."""
    i, omega = _q(0, 1, 0, 0), _q(Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    one = _q(1, 0, 0, 0)
    gens = [hurwitz_map(u, one) for u in (i, omega)]
    gens.append(hurwitz_map(_q(1, 1, 0, 0), _q(0, Fraction(1, 2), Fraction(1, 2), 0)))
    return MatrixGroup(gens, 4, "GL23")


# --- number theory ---------------------------------------------------------


def minkowski_bound(n: int) -> int:
    """l.c.m. of the orders of all finite subgroups of GL_n(Q)."""
    if n < 1:
        raise BadParameter(f"minkowski_bound needs n >= 1, got {n}")
    result = 1
    for p in primerange(2, n + 2):
        e, q = 0, p - 1
        while q <= n:
            e += n // q
            q *= p
        result *= p ** e
    return result


def admissible_primes(two_n: int) -> list[int]:
    """Primes p with p - 1 dividing 2n."""
    return [p for p in primerange(2, two_n + 2) if two_n % (p - 1) == 0]


@dataclass(frozen=True, order=True)
class FittingCandidate:
    p: int
    degree: int
    name: str


def _two_groups(limit: int) -> list[tuple[str, int, bool]]:
    """Hall's factors R with their rational degree and whether End is totally real."""
    out = [("C2", 1, True)]
    a = 2
    while 2 ** (a - 1) <= limit:
        out.append((f"C{2 ** a}", 2 ** (a - 1), False))
        a += 1
    a = 4
    while 2 ** (a - 2) <= limit:
        out += [(f"D{2 ** a}", 2 ** (a - 2), True), (f"QD{2 ** a}", 2 ** (a - 2), False)]
        a += 1
    a = 3
    while 2 ** (a - 1) <= limit:
        out.append((f"Q{2 ** a}", 2 ** (a - 1), False))
        a += 1
    return out


def fitting_candidates(two_n: int) -> list[FittingCandidate]:
    """Central products E o R from Hall's theorem whose rational degree divides 2n.

    Candidates with a totally real commuting field carry no invariant skew
    form on a single copy, so they need multiplicity at least two.
    """
    if two_n < 2 or two_n % 2:
        raise BadParameter(f"fitting_candidates needs an even 2n >= 2, got {two_n}")
    out = []
    for p in admissible_primes(two_n):
        if p == 2:
            for R, deg, real in _two_groups(two_n):
                k = 0
                while deg * 2 ** k <= two_n:
                    d = deg * 2 ** k
                    if two_n % d == 0 and not (real and d == two_n):
                        if k == 0:
                            name = R
                        else:
                            E = "D8" if k == 1 else f"2+^(1+{2 * k})"
                            name = E if R == "C2" else f"{E}o{R}"
                        out.append(FittingCandidate(2, d, name))
                    k += 1
            continue
        a = 1
        while totient(p ** a) <= two_n:
            base = int(totient(p ** a))
            k = 0
            while base * p ** k <= two_n:
                if two_n % (base * p ** k) == 0:
                    if k == 0:
                        name = f"C{p ** a}"
                    elif a == 1:
                        name = f"{p}^(1+{2 * k})"
                    else:
                        name = f"{p}^(1+{2 * k})oC{p ** a}"
                    out.append(FittingCandidate(p, base * p ** k, name))
                k += 1
            a += 1
    return sorted(out)
