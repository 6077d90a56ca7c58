"""
Lattices
========

Full-rank Z-lattices in Q^{1 x m} stored by their canonical upper-triangular
Hermite basis, plus the lattice operations everything else builds on:
duals, sums and intersections, short vectors, normalized pairs and the
perpendicular decomposition.

Vectors are rows; a lattice L with basis B is the row space Z^{1 x r} B.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm, sqrt

import numpy as np
from sympy import factorint
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, invariant_factors

from simflat.errors import (
    DimMismatch,
    NotIntegral,
    NotPositiveDefinite,
    RankDeficient,
    SingularForm,
)
from simflat.exact import (
    ExactMatrix,
    content,
    denom,
    identity,
    is_integral,
    is_positive_definite,
    is_skew,
    is_symmetric,
    key,
    matrix,
    numer,
    qq,
    same,
    scale,
    to_fraction,
    to_int_rows,
    zz_matrix,
)

logger = logging.getLogger(__name__)

_EPS = 1e-9


def _int_row_hnf(rows: list[list[int]], m: int) -> list[list[int]]:
    """Canonical upper-triangular integer row basis of the Z-span of ``rows``.

    sympy's HNF is column-style with pivots pushed to the right; reversing the
    coordinates before and after turns it into the row echelon convention.
    """
    if not rows:
        return []
    cols = [[row[m - 1 - c] for row in rows] for c in range(m)]
    W = hermite_normal_form(zz_matrix(cols, len(rows))).to_list()
    r = len(W[0]) if W else 0
    return [[int(W[m - 1 - c][r - 1 - t]) for c in range(m)] for t in range(r)]


def _span_rows(rows: list[list], m: int) -> list[list]:
    """Canonical basis (QQ entries) of the Z-span of rational rows, any rank."""
    rows = [list(r) for r in rows if any(a != 0 for a in r)]
    if not rows:
        return []
    d = lcm(1, *(denom(a) for r in rows for a in r))
    ints = [[numer(a * d) for a in r] for r in rows]
    return [[QQ(x, d) for x in r] for r in _int_row_hnf(ints, m)]


class Lattice:
    """A Z-lattice given by its canonical basis (rows).

    Lattices built by ``from_generators`` have full rank; ``span`` also allows
    lower-rank sublattices (perpendicular components).
    """

    __slots__ = ("basis", "_key")

    def __init__(self, basis: ExactMatrix):
        self.basis = basis
        self._key = key(basis)

    @classmethod
    def from_generators(cls, M) -> "Lattice":
        return cls(hnf_basis(matrix(M) if not isinstance(M, DomainMatrix) else M))

    @classmethod
    def span(cls, rows, dim: int) -> "Lattice":
        canon = _span_rows([[qq(a) for a in r] for r in rows], dim)
        return cls(DomainMatrix(canon, (len(canon), dim), QQ))

    @classmethod
    def standard(cls, m: int) -> "Lattice":
        return cls(identity(m))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def key(self) -> tuple:
        return self._key

    def rows(self) -> list[list]:
        return self.basis.to_list()

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, dim={self.dim}, basis={self.basis.to_Matrix().tolist()})"


def hnf_basis(M: ExactMatrix) -> ExactMatrix:
    """Unique upper-triangular Z-basis of the row span of M (rational entries allowed)."""
    rows, m = M.shape
    canon = _span_rows(M.to_list(), m)
    if len(canon) < m:
        raise RankDeficient(f"generators span rank {len(canon)} < {m}")
    return DomainMatrix(canon, (m, m), QQ)


def gram(L: Lattice, F: ExactMatrix) -> ExactMatrix:
    if F.shape != (L.dim, L.dim):
        raise DimMismatch(f"form of shape {F.shape} on a lattice in dimension {L.dim}")
    return L.basis * F * L.basis.transpose()


def determinant(L: Lattice, F: ExactMatrix):
    return gram(L, F).det()


def is_integral_pair(L: Lattice, F: ExactMatrix) -> bool:
    return is_integral(gram(L, F))


def scale_lattice(L: Lattice, c) -> Lattice:
    """c * L for a positive rational c (canonical form is preserved by positive scaling)."""
    return Lattice(scale(L.basis, c))


def contains(L1: Lattice, L2: Lattice) -> bool:
    """True iff L2 is a sublattice of the full-rank lattice L1."""
    if L1.dim != L2.dim:
        raise DimMismatch("lattices in different dimensions")
    return is_integral(L2.basis * L1.basis.inv())


def index(L1: Lattice, L2: Lattice) -> Fraction:
    """[L1 : L2] for full-rank lattices (a rational number in general)."""
    return abs(to_fraction(L2.basis.det()) / to_fraction(L1.basis.det()))


def dual_lattice(L: Lattice, F: ExactMatrix) -> Lattice:
    """L^{#,F} = {x : x F y^T in Z for all y in L}, basis (B F B^T)^{-1} B."""
    if F.det() == 0:
        raise SingularForm("dual with respect to a singular form")
    G = gram(L, F)
    if G.det() == 0:
        raise SingularForm("form is degenerate on the lattice")
    return Lattice(hnf_basis(G.inv() * L.basis))


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    if L1.dim != L2.dim:
        raise DimMismatch("lattices in different dimensions")
    return Lattice.span(L1.rows() + L2.rows(), L1.dim)


def intersect(L1: Lattice, L2: Lattice) -> Lattice:
    """L1 ∩ L2 = (L1* + L2*)* with respect to the standard form."""
    if L1.dim != L2.dim:
        raise DimMismatch("lattices in different dimensions")
    if L1.rank < L1.dim or L2.rank < L2.dim:
        raise RankDeficient("intersection needs full-rank lattices")
    I = identity(L1.dim)
    return dual_lattice(lattice_sum(dual_lattice(L1, I), dual_lattice(L2, I)), I)


# --- short vectors ---------------------------------------------------------


def _fincke_pohst(G: list[list[Fraction]], bound: Fraction) -> list[tuple[int, ...]]:
    """Coefficient vectors x != 0 with x G x^T <= bound, first nonzero entry positive.

    Floating Cholesky only prunes; every emitted vector is checked exactly.
    """
    n = len(G)
    Gf = np.array([[float(a) for a in row] for row in G], dtype=float)
    try:
        R = np.linalg.cholesky(Gf).T
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("Gram matrix is not positive definite")
    q = np.diag(R) ** 2
    mu = R / np.diag(R)[:, None]
    x = [0] * n
    found = []
    fbound = float(bound) * (1 + _EPS) + _EPS

    def descend(i: int, remaining: float) -> None:
        c = -sum(mu[i, j] * x[j] for j in range(i + 1, n))
        reach = sqrt(max(remaining, 0.0) / q[i])
        for xi in range(ceil(c - reach - _EPS), floor(c + reach + _EPS) + 1):
            t = q[i] * (xi - c) ** 2
            if t > remaining + _EPS:
                continue
            x[i] = xi
            if i == 0:
                found.append(tuple(x))
            else:
                descend(i - 1, remaining - t)
        x[i] = 0

    descend(n - 1, fbound)

    out = []
    for v in found:
        nz = next((a for a in v if a != 0), 0)
        if nz <= 0:
            continue
        norm = sum(v[i] * G[i][j] * v[j] for i in range(n) if v[i] for j in range(n) if v[j])
        if 0 < norm <= bound:
            out.append((norm, v))
    out.sort()
    return [v for _, v in out]


def short_coefficients(G: ExactMatrix, bound) -> list[tuple[int, ...]]:
    """Short vectors of a Gram matrix in coefficient coordinates (one per ± pair)."""
    Gq = [[to_fraction(a) for a in row] for row in G.to_list()]
    return _fincke_pohst(Gq, Fraction(bound))


def short_vectors(L: Lattice, F: ExactMatrix, bound) -> list[tuple]:
    """All v in L with 0 < v F v^T <= bound, one per ± pair, sorted by (norm, v)."""
    if not is_positive_definite(F):
        raise NotPositiveDefinite("short vectors need a positive definite form")
    coeffs = short_coefficients(gram(L, F), bound)
    B = [[to_fraction(a) for a in row] for row in L.rows()]
    vectors = []
    for c in coeffs:
        v = tuple(sum(c[i] * B[i][j] for i in range(L.rank)) for j in range(L.dim))
        vectors.append(v)
    Fq = [[to_fraction(a) for a in row] for row in F.to_list()]

    def norm(v):
        return sum(v[i] * Fq[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))

    vectors.sort(key=lambda v: (norm(v), v))
    return [tuple(QQ(a.numerator, a.denominator) for a in v) for v in vectors]


# --- integral and normalized pairs -----------------------------------------


@dataclass(frozen=True)
class IntegralPair:
    """A lattice with a positive definite form whose Gram matrix is integral."""

    lattice: Lattice
    form: ExactMatrix

    def __post_init__(self):
        if not is_integral(gram(self.lattice, self.form)):
            raise NotIntegral("Gram matrix of the pair is not integral")

    @property
    def gram(self) -> ExactMatrix:
        return gram(self.lattice, self.form)

    @property
    def det(self) -> int:
        return numer(self.gram.det())

    def __hash__(self) -> int:
        return hash((self.lattice.key, key(self.form)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntegralPair)
            and self.lattice == other.lattice
            and same(self.form, other.form)
        )


def scale_to_primitive(L: Lattice, F: ExactMatrix) -> IntegralPair:
    """Rescale F by a positive rational so the Gram matrix is integral with content 1."""
    c = content(gram(L, F))
    return IntegralPair(L, scale(F, 1 / c))


def discriminant_group(L: Lattice, F: ExactMatrix) -> list[int]:
    """Invariant factors (> 1) of L^{#,F}/L for an integral pair."""
    G = gram(L, F)
    if not is_integral(G):
        raise NotIntegral("discriminant group needs an integral pair")
    facs = invariant_factors(zz_matrix(to_int_rows(G), G.shape[1]))
    return sorted(abs(int(f)) for f in facs if abs(int(f)) > 1)


def _partial_dual(L: Lattice, F: ExactMatrix, p: int) -> tuple[Lattice, ExactMatrix]:
    """(L^{#,F} ∩ p^{-1} L, pF): dualizes the p-part only."""
    return intersect(dual_lattice(L, F), scale_lattice(L, Fraction(1, p))), scale(F, p)


def normalize_pair(pair: IntegralPair) -> IntegralPair:
    """Reduce an integral pair to one with squarefree exponent and p-ranks <= m/2.

    Both rules use the partial dualization at p; the first lowers p-adic
    scales of two or more, the second swaps the unimodular and p-modular
    Jordan components when the latter is larger.
    """
    L, F = pair.lattice, pair.form
    if not is_integral(gram(L, F)):
        raise NotIntegral("normalize_pair needs an integral pair")
    m = L.rank
    steps = 0
    while True:
        facs = discriminant_group(L, F)
        if not facs:
            break
        exponent = facs[-1]
        target = None
        for p, e in sorted(factorint(exponent).items()):
            if e >= 2:
                target = p
                break
        if target is None:
            for p in sorted(factorint(exponent)):
                rank_p = sum(1 for f in facs if f % p == 0)
                if 2 * rank_p > m:
                    target = p
                    break
        if target is None:
            break
        L, F = _partial_dual(L, F, target)
        steps += 1
    if steps:
        logger.debug(f"normalize_pair: {steps} partial dualization step(s)")
    return IntegralPair(L, F)


def is_normalized(pair: IntegralPair) -> bool:
    facs = discriminant_group(pair.lattice, pair.form)
    if not facs:
        return True
    m = pair.lattice.rank
    for p, e in factorint(facs[-1]).items():
        if e >= 2 or 2 * sum(1 for f in facs if f % p == 0) > m:
            return False
    return True


# --- perpendicular decomposition -------------------------------------------


def _bilinear(x, G, y) -> Fraction:
    n = len(x)
    return sum(x[i] * G[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])


def perp_decompose(L: Lattice, forms: list[ExactMatrix]) -> list[Lattice]:
    """Finest decomposition of L into components perpendicular under every form.

    The first form must be positive definite; its indecomposable vectors of norm
    at most the largest basis norm span L and their non-orthogonality graph
    gives the finest orthogonal decomposition. Components linked by another
    form are then merged.
    """
    if not forms:
        raise DimMismatch("perp_decompose needs at least one form")
    F = forms[0]
    if not is_positive_definite(F):
        raise NotPositiveDefinite("first form must be positive definite")
    G0 = [[to_fraction(a) for a in row] for row in gram(L, F).to_list()]
    extra = [[[to_fraction(a) for a in row] for row in gram(L, f).to_list()] for f in forms[1:]]
    m = L.rank
    bound = max(G0[i][i] for i in range(m))
    short = _fincke_pohst(G0, bound)
    signed = short + [tuple(-a for a in v) for v in short]

    def decomposable(v) -> bool:
        for x in signed:
            if x == v:
                continue
            rest = tuple(a - b for a, b in zip(v, x))
            if any(rest) and _bilinear(x, G0, rest) >= 0:
                return True
        return False

    indecomposable = [v for v in short if not decomposable(v)]

    parent = list(range(len(indecomposable)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for i, v in enumerate(indecomposable):
        for j in range(i):
            if _bilinear(v, G0, indecomposable[j]) != 0:
                union(i, j)

    groups: dict[int, list] = {}
    for i, v in enumerate(indecomposable):
        groups.setdefault(find(i), []).append(v)
    blocks = [Lattice.span([[QQ(a) for a in v] for v in vs], m) for vs in groups.values()]

    # merge components linked by the extra forms
    linked = list(range(len(blocks)))

    def bfind(i):
        while linked[i] != i:
            i = linked[i]
        return i

    rows = [[[to_fraction(a) for a in r] for r in b.rows()] for b in blocks]
    for i in range(len(blocks)):
        for j in range(i):
            if any(
                _bilinear(x, G, y) != 0 or _bilinear(y, G, x) != 0
                for G in extra
                for x in rows[i]
                for y in rows[j]
            ):
                ri, rj = bfind(i), bfind(j)
                if ri != rj:
                    linked[max(ri, rj)] = min(ri, rj)

    merged: dict[int, list] = {}
    for i, b in enumerate(blocks):
        merged.setdefault(bfind(i), []).extend(b.rows())

    B = L.basis
    components = []
    for coeff_rows in merged.values():
        ambient = DomainMatrix(coeff_rows, (len(coeff_rows), m), QQ) * B
        components.append(Lattice.span(ambient.to_list(), L.dim))
    components.sort(key=lambda c: c.key)
    return components


def check_form(F: ExactMatrix, m: int | None = None) -> None:
    if F.shape[0] != F.shape[1] or (m is not None and F.shape[0] != m):
        raise DimMismatch(f"form of shape {F.shape}")
    if not (is_symmetric(F) or is_skew(F)):
        raise DimMismatch("forms must be symmetric or skew-symmetric")


@dataclass(frozen=True, eq=False)
class FormTuple:
    """A positive definite form F plus auxiliary symmetric or skew forms (S, eF, ...)."""

    posdef: ExactMatrix
    extras: tuple = ()

    def __post_init__(self):
        m = self.posdef.shape[0]
        if not is_positive_definite(self.posdef):
            raise NotPositiveDefinite("the first form of a tuple must be positive definite")
        object.__setattr__(self, "extras", tuple(self.extras))
        for f in self.extras:
            check_form(f, m)

    @property
    def dim(self) -> int:
        return self.posdef.shape[0]

    @property
    def forms(self) -> list[ExactMatrix]:
        return [self.posdef, *self.extras]
