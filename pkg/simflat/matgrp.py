"""
Matrix groups
=============

Finite subgroups of GL_m(Q) given by generators: enumeration, form spaces,
commuting algebras, the symplectic and irreducibility tests, and the
wreath/tensor constructions.

Enumeration happens in the coordinates of an invariant lattice, where every
element is an integer matrix and can be handled with numpy int64 arrays.
"""

import logging
import random
import threading
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np
from sympy import Matrix, Poly, symbols
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

from simflat.config import get_settings
from simflat.errors import (
    BadInput,
    BadParameter,
    DimMismatch,
    MalformedEntry,
    OrderCapExceeded,
    UnsupportedField,
)
from simflat.exact import (
    ExactMatrix,
    block_diag,
    commutes,
    denominator,
    flatten,
    format_matrix,
    from_numpy,
    identity,
    is_integral,
    is_positive_definite,
    kron,
    matrix,
    minimal_polynomial,
    qq,
    same,
    scale,
    to_int_rows,
    to_numpy,
    trace,
    unflatten,
    zeros,
)
from simflat.lattice import Lattice, lattice_sum

logger = logging.getLogger(__name__)

_LATTICE_STEPS = 200
_ENTRY_LIMIT = 1 << 40
_WALK_LIMIT = 10_000


class MatrixGroup:
    """A finite matrix group given by generators; elements are cached on first use."""

    def __init__(self, generators, dim: int | None = None, name: str = ""):
        gens = [matrix(g) for g in generators]
        if dim is None:
            if not gens:
                raise DimMismatch("a group without generators needs an explicit dim")
            dim = gens[0].shape[0]
        for i, g in enumerate(gens):
            if g.shape != (dim, dim):
                raise DimMismatch(f"generator {i} has shape {g.shape}, expected {(dim, dim)}")
            if g.det() == 0:
                raise BadInput(f"generator {i} is singular")
        self.generators: list[ExactMatrix] = gens
        self.dim = dim
        self.name = name
        self._lattice: Lattice | None = None
        self._elements: list[np.ndarray] | None = None
        self._index: dict[bytes, int] | None = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"MatrixGroup{label}(dim={self.dim}, generators={len(self.generators)})"

    @property
    def order(self) -> int:
        return enumerate_group(self)

    def lattice(self) -> Lattice:
        """An invariant lattice (the closure of Z^m under the generators)."""
        if self._lattice is None:
            self._lattice = invariant_lattice(self)
        return self._lattice

    def coefficient_generators(self) -> list[np.ndarray]:
        B = self.lattice().basis
        Binv = B.inv()
        return [to_numpy(B * g * Binv) for g in self.generators]

    def coefficient_elements(self, cap: int | None = None) -> list[np.ndarray]:
        enumerate_group(self, cap)
        return self._elements

    def elements(self, cap: int | None = None) -> list[ExactMatrix]:
        B = self.lattice().basis
        Binv = B.inv()
        return [Binv * from_numpy(h) * B for h in self.coefficient_elements(cap)]

    def contains(self, g: ExactMatrix) -> bool:
        enumerate_group(self)
        B = self.lattice().basis
        h = B * g * B.inv()
        if not is_integral(h):
            return False
        return to_numpy(h).tobytes() in self._index


def closure(gens: list[np.ndarray], cap: int) -> list[np.ndarray]:
    """All products of integer generators (breadth-first), identity first."""
    m = gens[0].shape[0] if gens else 0
    one = np.eye(m, dtype=np.int64)
    seen = {one.tobytes()}
    elements = [one]
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for h in gens:
                y = x @ h
                k = y.tobytes()
                if k in seen:
                    continue
                if np.abs(y).max(initial=0) > _ENTRY_LIMIT:
                    raise OrderCapExceeded("matrix entries are growing without bound")
                seen.add(k)
                elements.append(y)
                nxt.append(y)
                if len(elements) > cap:
                    raise OrderCapExceeded(f"more than {cap} elements")
        frontier = nxt
    return elements


def invariant_lattice(G: MatrixGroup) -> Lattice:
    """Z-span of Z^m g over the group, found by closing Z^m under the generators."""
    L = Lattice.standard(G.dim)
    for _ in range(_LATTICE_STEPS):
        images = [row for g in G.generators for row in (L.basis * g).to_list()]
        M = lattice_sum(L, Lattice.span(images, G.dim)) if images else L
        if M == L:
            return L
        L = M
    raise OrderCapExceeded("no invariant lattice found; the group is probably infinite")


def enumerate_group(G: MatrixGroup, cap: int | None = None) -> int:
    """Order of G by full closure; the element list is cached on the group."""
    if G._elements is not None:
        return len(G._elements)
    cap = cap if cap is not None else get_settings().order_cap
    with G._lock:
        if G._elements is None:
            gens = G.coefficient_generators()
            if not gens:
                gens = [np.eye(G.dim, dtype=np.int64)]
            elements = closure(gens, cap)
            G._index = {x.tobytes(): i for i, x in enumerate(elements)}
            G._elements = elements
            logger.debug(f"enumerated {G!r}: order {len(elements)}")
    return len(G._elements)


def is_subgroup(H: MatrixGroup, G: MatrixGroup) -> bool:
    return all(G.contains(h) for h in H.generators)


def same_group(G: MatrixGroup, H: MatrixGroup) -> bool:
    return G.dim == H.dim and G.order == H.order and is_subgroup(H, G)


def center_order(G: MatrixGroup) -> int:
    gens = G.coefficient_generators()
    return sum(
        1 for x in G.coefficient_elements() if all(np.array_equal(x @ h, h @ x) for h in gens)
    )


def _normal_closure(seeds: list[np.ndarray], gens: list[np.ndarray], cap: int) -> list[np.ndarray]:
    """Elements of the smallest subgroup containing ``seeds`` and normalized by ``gens``."""
    inv = [np.rint(np.linalg.inv(h)).astype(np.int64) for h in gens]
    pool = list(seeds)
    while True:
        sub = closure(pool, cap)
        keys = {x.tobytes() for x in sub}
        conj = {}
        for h, v in zip(gens, inv):
            for s in pool:
                c = v @ s @ h
                if c.tobytes() not in keys:
                    conj[c.tobytes()] = c
        if not conj:
            return sub
        pool.extend(conj.values())


def commutator_subgroup_order(G: MatrixGroup) -> int:
    """Order of [G, G], the normal closure of the generator commutators."""
    gens = G.coefficient_generators()
    inv = [np.rint(np.linalg.inv(h)).astype(np.int64) for h in gens]
    comms = [
        inv[i] @ inv[j] @ gens[i] @ gens[j]
        for i in range(len(gens))
        for j in range(len(gens))
        if i != j
    ]
    if not comms:
        return 1
    return len(_normal_closure(comms, gens, G.order))


def _element_order(x: np.ndarray) -> int:
    one = np.eye(x.shape[0], dtype=np.int64)
    y, k = x, 1
    while not np.array_equal(y, one):
        y, k = y @ x, k + 1
    return k


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def p_core(G: MatrixGroup, p: int) -> MatrixGroup:
    """O_p(G), the largest normal p-subgroup of G.

    An element lies in O_p(G) iff its normal closure together with the part
    of O_p(G) found so far is a p-group. A rejected element rules out its
    whole conjugacy class times that part.
    """
    elements = G.coefficient_elements()
    gens = G.coefficient_generators()
    stack = np.stack(elements)
    stack_inv = np.rint(np.linalg.inv(stack.astype(float))).astype(np.int64)
    one = np.eye(G.dim, dtype=np.int64)
    core, core_gens = [one], []
    settled = {one.tobytes()}
    for x in elements:
        if x.tobytes() in settled:
            continue
        if _is_power_of(_element_order(x), p):
            grown = _normal_closure(core_gens + [x], gens, len(elements))
            if _is_power_of(len(grown), p):
                core, core_gens = grown, core_gens + [x]
                settled.update(y.tobytes() for y in grown)
                continue
        klass = {c.tobytes(): c for c in stack_inv @ x @ stack}
        for c in klass.values():
            settled.update((c @ y).tobytes() for y in core)
    B = G.lattice().basis
    Binv = B.inv()
    name = f"O{p}({G.name})" if G.name else ""
    logger.debug(f"p-core of {G!r} at p={p}: order {len(core)}")
    return MatrixGroup([Binv * from_numpy(h) * B for h in core_gens], G.dim, name)


def normalizes(G: MatrixGroup, N: MatrixGroup) -> bool:
    """True iff every generator of G conjugates N into itself."""
    for g in G.generators:
        ginv = g.inv()
        if not all(N.contains(ginv * n * g) for n in N.generators):
            return False
    return True


# --- form spaces -----------------------------------------------------------


@dataclass(frozen=True)
class FormSpace:
    basis_sym: list[ExactMatrix]
    basis_skew: list[ExactMatrix]

    @property
    def dim(self) -> int:
        return len(self.basis_sym) + len(self.basis_skew)

    def all(self) -> list[ExactMatrix]:
        return self.basis_sym + self.basis_skew


def _span_basis(mats: list[ExactMatrix], n: int) -> list[ExactMatrix]:
    """Echelon basis of the Q-span of n x n matrices."""
    vecs = [flatten(M) for M in mats]
    vecs = [v for v in vecs if any(a != 0 for a in v)]
    if not vecs:
        return []
    R, pivots = DomainMatrix(vecs, (len(vecs), n * n), QQ).rref()
    return [unflatten(row, n) for row in R.to_list()[: len(pivots)]]


def _kernel(blocks: list[ExactMatrix], size: int) -> list[list]:
    rows = [row for b in blocks for row in b.to_list()]
    if not rows:
        return identity(size).to_list()
    null = DomainMatrix(rows, (len(rows), size), QQ).nullspace()
    return null.to_list()


def fixed_forms(G: MatrixGroup) -> FormSpace:
    """Basis of {F : g F g^T = F for all generators g}, split into symmetric and skew."""
    m = G.dim
    I2 = identity(m * m)
    null = _kernel([kron(g, g) - I2 for g in G.generators], m * m)
    mats = [unflatten(v, m) for v in null]
    half = QQ(1, 2)
    sym = _span_basis([scale(B + B.transpose(), half) for B in mats], m)
    skew = _span_basis([scale(B - B.transpose(), half) for B in mats], m)
    return FormSpace(sym, skew)


def average_form(G: MatrixGroup, F0: ExactMatrix, cap: int | None = None) -> ExactMatrix:
    """(1/|G|) sum of g F0 g^T over all elements."""
    B = G.lattice().basis
    Binv = B.inv()
    G0 = B * F0 * B.transpose()
    d = denominator(G0)
    # Python integers throughout; the scaled Gram matrix can leave int64.
    G0int = np.array(to_int_rows(scale(G0, d)), dtype=object).reshape(G.dim, G.dim)
    H = np.stack(G.coefficient_elements(cap)).astype(object)
    total = np.zeros((G.dim, G.dim), dtype=object)
    for start in range(0, len(H), 4096):
        chunk = H[start:start + 4096]
        total += (chunk @ G0int @ chunk.transpose(0, 2, 1)).sum(axis=0)
    S = scale(from_numpy(total), QQ(1, d * len(H)))
    return Binv * S * Binv.transpose()


def positive_form(G: MatrixGroup, cap: int | None = None) -> ExactMatrix:
    """An invariant positive definite form; averages the identity or searches the form space."""
    try:
        return average_form(G, identity(G.dim), cap)
    except OrderCapExceeded:
        logger.info(f"{G!r} too large to average, searching the symmetric form space")
    sym = fixed_forms(G).basis_sym
    rng = random.Random(get_settings().seed)
    # Projection of the identity under the trace inner product first.
    gram_rows = [[trace(a * b) for b in sym] for a in sym]
    rhs = DomainMatrix([[trace(a)] for a in sym], (len(sym), 1), QQ)
    coeffs = DomainMatrix(gram_rows, (len(sym), len(sym)), QQ).inv() * rhs
    candidate = zeros(G.dim, G.dim)
    for c, b in zip(coeffs.to_list(), sym):
        candidate = candidate + scale(b, c[0])
    for _ in range(200):
        if is_positive_definite(candidate):
            return candidate
        candidate = candidate + scale(sym[rng.randrange(len(sym))], QQ(rng.randint(-3, 3), 4))
    raise OrderCapExceeded("no positive definite invariant form found")


# --- endomorphism algebra --------------------------------------------------


@dataclass
class EndAlgebra:
    basis: list[ExactMatrix]
    tag: str
    is_division: bool
    center_dim: int
    simple: bool
    primitive: ExactMatrix | None = None
    minpoly: Poly | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def commutative(self) -> bool:
        return self.center_dim == self.dim


def _combination(basis: list[ExactMatrix], coeffs) -> ExactMatrix:
    n = basis[0].shape[0]
    out = zeros(n, n)
    for c, b in zip(coeffs, basis):
        if c:
            out = out + scale(b, c)
    return out


def _center(basis: list[ExactMatrix]) -> list[ExactMatrix]:
    n = basis[0].shape[0]
    k = len(basis)
    # columns j: concatenated [E_j, E_i] over i
    cols = [[a for Ei in basis for a in flatten(Ej * Ei - Ei * Ej)] for Ej in basis]
    rows = [list(r) for r in zip(*cols)]
    null = DomainMatrix(rows, (len(rows), k), QQ).nullspace().to_list()
    return _span_basis([_combination(basis, c) for c in null], n) if null else []


def _walk(basis: list[ExactMatrix]):
    """The basis, then sum_i c^i b_i for c = 2, 3, ...

    Points of this curve lie in a proper subspace for fewer than len(basis)
    values of c, so a generic element turns up after finitely many steps.
    """
    yield from basis
    for c in range(2, _WALK_LIMIT):
        yield _combination(basis, [c**i for i in range(len(basis))])


def _decide_field(basis: list[ExactMatrix]) -> tuple[bool, ExactMatrix, Poly]:
    """Whether a commutative algebra is a field, with the deciding element.

    A reducible minimal polynomial exhibits zero divisors; an irreducible one of
    degree dim generates the algebra as a field.
    """
    n = len(basis)
    for e in _walk(basis):
        poly = minimal_polynomial(e)
        if not poly.is_irreducible or poly.degree() == n:
            return poly.is_irreducible, e, poly
    raise UnsupportedField(f"no deciding element among {_WALK_LIMIT} candidates")


def _has_zero_divisor(basis: list[ExactMatrix]) -> bool:
    candidates = list(basis)
    candidates += [a * b for a, b in product(basis, repeat=2)]
    candidates += [a - b for a, b in combinations(basis, 2)]
    candidates += [e for _, e in zip(range(16), _walk(basis))]
    for e in candidates:
        if any(a != 0 for row in e.to_list() for a in row) and not minimal_polynomial(e).is_irreducible:
            return True
    return False


def _pure_quaternion_gram(basis: list[ExactMatrix], n: int):
    """Gram of the norm form on trace-zero elements of a quaternion algebra over Q."""
    pure = _span_basis([e - scale(identity(n), trace(e) / n) for e in basis], n)
    rows = []
    for a in pure:
        row = []
        for b in pure:
            s = a * b + b * a
            row.append(-s.to_list()[0][0] / 2)
        rows.append(row)
    return DomainMatrix(rows, (len(rows), len(rows)), QQ)


def _is_anisotropic(gram: DomainMatrix) -> bool:
    """No nonzero rational x with x Q x^T = 0 (ternary Q)."""
    if is_positive_definite(gram) or is_positive_definite(-gram):
        return True
    xs = symbols("x0:3")
    Q = scale(gram, denominator(gram)).to_Matrix()
    eq = sum(Q[i, j] * xs[i] * xs[j] for i in range(3) for j in range(3))
    return diop_ternary_quadratic(eq)[0] is None


def _is_totally_real(poly: Poly) -> bool:
    return poly.count_roots() == poly.degree()


def _decide_division(G: MatrixGroup, basis, center, cpoly: Poly) -> bool:
    """Whether a noncommutative simple commuting algebra is a division algebra.

    The adjoint with respect to an invariant positive form is a positive
    involution. Over a totally real center that leaves division algebras of
    degree 2 only, and a quaternion algebra whose positive involution is the
    canonical one is totally definite.
    """
    if _has_zero_divisor(basis):
        return False
    k, n = len(center), len(basis)
    m = G.dim
    if k == 1 and n == 4:
        return _is_anisotropic(_pure_quaternion_gram(basis, m))
    if _is_totally_real(cpoly):
        if n != 4 * k:
            return False
        F = positive_form(G)
        Finv = F.inv()
        if all(
            all(commutes(e + F * e.transpose() * Finv, b) for b in basis) for e in basis
        ):
            return True
    raise UnsupportedField(
        f"cannot decide whether a commuting algebra of dimension {n} over a center "
        f"of degree {k} is a division algebra"
    )


def commuting_basis(mats: list[ExactMatrix], m: int) -> list[ExactMatrix]:
    """Basis of {e : ea = ae for every a in mats}."""
    I = identity(m)
    null = _kernel([kron(I, a.transpose()) - kron(a, I) for a in mats], m * m)
    return _span_basis([unflatten(v, m) for v in null], m)


def end_algebra(G: MatrixGroup) -> EndAlgebra:
    """Commuting algebra {e : eg = ge} with a classification tag."""
    m = G.dim
    basis = commuting_basis(G.generators, m)
    center = _center(basis)
    if len(center) == len(basis):
        field, e, poly = _decide_field(basis)
        if field:
            disc = poly.discriminant() if poly.degree() == 2 else None
            tag = "imaginary-quadratic" if disc is not None and disc < 0 else "field"
            return EndAlgebra(basis, tag, True, len(center), True, e, poly)
        return EndAlgebra(basis, "other", False, len(center), False, e, poly)

    center_is_field, central, cpoly = _decide_field(center)
    division = center_is_field and _decide_division(G, basis, center, cpoly)
    if not center_is_field:
        tag = "other"
    elif not division:
        tag = "matrix-algebra-over-division"
    elif len(center) == 1 and len(basis) == 4:
        gram = _pure_quaternion_gram(basis, m)
        tag = "quaternion-definite" if is_positive_definite(gram) else "other"
    else:
        tag = "other"
    return EndAlgebra(basis, tag, division, len(center), center_is_field, central, cpoly)


def is_rationally_irreducible(G: MatrixGroup) -> bool:
    return end_algebra(G).is_division


def is_symplectic(G: MatrixGroup) -> bool:
    """True iff the skew form space holds an invertible element."""
    if G.dim % 2:
        return False
    skew = fixed_forms(G).basis_skew
    if not skew:
        return False
    rng = random.Random(get_settings().seed)
    for _ in range(20):
        if _combination(skew, [rng.randint(-5, 5) for _ in skew]).det() != 0:
            return True
    # exact fallback: the determinant as a polynomial in the coefficients
    ts = symbols(f"t0:{len(skew)}")
    generic = sum((t * Matrix(S.to_Matrix()) for t, S in zip(ts, skew)), Matrix.zeros(G.dim))
    return generic.det(method="berkowitz").expand() != 0


def _adjoint_part(E: EndAlgebra, F: ExactMatrix, sign: int) -> list[ExactMatrix]:
    n = F.shape[0]
    cols = [flatten(e * F + scale(F * e.transpose(), sign)) for e in E.basis]
    rows = [list(r) for r in zip(*cols)]
    null = DomainMatrix(rows, (len(rows), len(E.basis)), QQ).nullspace().to_list()
    return _span_basis([_combination(E.basis, c) for c in null], n) if null else []


def skew_adjoint_elements(E: EndAlgebra, F: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {e in End : eF is skew}."""
    return _adjoint_part(E, F, 1)


def self_adjoint_elements(E: EndAlgebra, F: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {e in End : eF is symmetric}."""
    return _adjoint_part(E, F, -1)


def totally_complex_elements(E: EndAlgebra, F: ExactMatrix) -> list[ExactMatrix]:
    """Skew-adjoint generators of the smallest totally complex subfields Q[e] of End."""
    skew = skew_adjoint_elements(E, F)
    candidates = list(skew)
    candidates += [a + b for a, b in combinations(skew, 2)]
    scored = []
    for e in candidates:
        poly = minimal_polynomial(e)
        if poly.is_irreducible:
            scored.append((poly.degree(), e))
    if not scored:
        return []
    low = min(d for d, _ in scored)
    n = F.shape[0]
    chosen, spans = [], []
    for d, e in scored:
        if d != low:
            continue
        powers = [identity(n)]
        for _ in range(d - 1):
            powers.append(powers[-1] * e)
        span = [flatten(b) for b in _span_basis(powers, n)]
        if span not in spans:
            spans.append(span)
            chosen.append(e)
    return chosen


# --- constructions ---------------------------------------------------------


def conjugate(G: MatrixGroup, T: ExactMatrix) -> MatrixGroup:
    """The group T^{-1} G T."""
    Tinv = T.inv()
    return MatrixGroup([Tinv * g * T for g in G.generators], G.dim, G.name)


def _block_permutation(perm: list[int], d: int) -> ExactMatrix:
    k = len(perm)
    rows = [[QQ(0)] * (d * k) for _ in range(d * k)]
    for i, j in enumerate(perm):
        for t in range(d):
            rows[i * d + t][j * d + t] = QQ(1)
    return DomainMatrix(rows, (d * k, d * k), QQ)


def wreath(H: MatrixGroup, k: int) -> MatrixGroup:
    """H wr S_k acting on k blocks of size dim(H)."""
    if k < 2:
        raise BadParameter(f"wreath needs k >= 2, got {k}")
    d = H.dim
    gens = [block_diag(h, *[identity(d)] * (k - 1)) for h in H.generators]
    gens.append(_block_permutation([1, 0] + list(range(2, k)), d))
    if k > 2:
        gens.append(_block_permutation([(i + 1) % k for i in range(k)], d))
    name = f"{H.name}wrS{k}" if H.name else ""
    return MatrixGroup(gens, d * k, name)


def tensor(G: MatrixGroup, H: MatrixGroup) -> MatrixGroup:
    """Group generated by g (x) I and I (x) h."""
    Ig, Ih = identity(G.dim), identity(H.dim)
    gens = [kron(g, Ih) for g in G.generators] + [kron(Ig, h) for h in H.generators]
    name = f"{G.name}t{H.name}" if G.name and H.name else ""
    return MatrixGroup(gens, G.dim * H.dim, name)


# --- group file format -----------------------------------------------------


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split("#", 1)[0].split():
            yield lineno, tok


def read_group(text: str, name: str = "") -> MatrixGroup:
    """Parse "dim m", "gens k", then k matrices in the shared matrix text format."""
    toks = list(_tokens(text))
    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1][0] if toks else 1
            raise MalformedEntry(f"unexpected end of input, expected {what}", last)
        pos += 1
        return toks[pos - 1]

    def take_int(what: str) -> int:
        line, tok = take(what)
        try:
            return int(tok)
        except ValueError:
            raise MalformedEntry(f"expected {what}, got {tok!r}", line)

    for keyword in ("dim", "gens"):
        line, tok = take(f"'{keyword}'")
        if tok != keyword:
            raise MalformedEntry(f"expected '{keyword}', got {tok!r}", line)
        if keyword == "dim":
            m = take_int("dimension")
        else:
            k = take_int("generator count")
    gens = []
    for i in range(k):
        r, c = take_int("rows"), take_int("cols")
        if (r, c) != (m, m):
            raise MalformedEntry(f"generator {i} is {r}x{c}, expected {m}x{m}", toks[pos - 1][0])
        values = []
        for _ in range(r * c):
            line, tok = take("matrix entry")
            try:
                values.append(qq(tok))
            except (ValueError, ZeroDivisionError):
                raise MalformedEntry(f"bad matrix entry {tok!r}", line)
        gens.append(DomainMatrix([values[j * c:(j + 1) * c] for j in range(r)], (r, c), QQ))
    if pos != len(toks):
        raise MalformedEntry("trailing data after the last generator", toks[pos][0])
    return MatrixGroup(gens, m, name)


def write_group(G: MatrixGroup) -> str:
    parts = [f"dim {G.dim}\ngens {len(G.generators)}\n"]
    parts += [format_matrix(g) for g in G.generators]
    return "".join(parts)


def preserves(g: ExactMatrix, F: ExactMatrix) -> bool:
    return same(g * F * g.transpose(), F)


__all__ = [
    "MatrixGroup",
    "FormSpace",
    "EndAlgebra",
    "average_form",
    "center_order",
    "commuting_basis",
    "closure",
    "commutator_subgroup_order",
    "conjugate",
    "end_algebra",
    "enumerate_group",
    "fixed_forms",
    "invariant_lattice",
    "is_rationally_irreducible",
    "is_subgroup",
    "is_symplectic",
    "normalizes",
    "positive_form",
    "read_group",
    "same_group",
    "self_adjoint_elements",
    "skew_adjoint_elements",
    "tensor",
    "totally_complex_elements",
    "wreath",
    "write_group",
]
