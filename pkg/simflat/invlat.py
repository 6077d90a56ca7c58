"""
Invariant lattices
==================

Centerings (invariant sublattices between pL and L), the breadth-first
lattice graph of a finite group or a Z-order, and its isomorphism classes.

Acting matrices are either the generators of a ``MatrixGroup`` or a Z-basis
of an order; a lattice L is invariant when L a is contained in L for each
acting matrix a.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from sympy import primefactors

from simflat.config import get_settings
from simflat.errors import NotInvariant, OrderCapExceeded
from simflat.exact import (
    ExactMatrix,
    content,
    identity,
    is_integral,
    matrix,
    qq,
    scale,
    square_class,
    to_fraction,
    to_int_rows,
    trace,
    zeros,
)
from simflat.lattice import (
    Lattice,
    dual_lattice,
    gram,
    scale_lattice,
    short_vectors,
)
from simflat.matgrp import MatrixGroup, commuting_basis

logger = logging.getLogger(__name__)


def _acting(G) -> list[ExactMatrix]:
    return list(G.generators) if isinstance(G, MatrixGroup) else list(G)


def is_invariant(L: Lattice, acting: list[ExactMatrix]) -> bool:
    Binv = L.basis.inv()
    return all(is_integral(L.basis * a * Binv) for a in acting)


# --- linear algebra mod p --------------------------------------------------


def _rref_mod_p(rows: list[list[int]], p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon basis of the F_p-span of ``rows``."""
    rows = [[x % p for x in r] for r in rows]
    out: list[list[int]] = []
    n = len(rows[0]) if rows else 0
    for col in range(n):
        pivot = next((r for r in rows if r[col]), None)
        if pivot is None:
            continue
        rows.remove(pivot)
        inv = pow(pivot[col], -1, p)
        pivot = [(x * inv) % p for x in pivot]
        rows = [[(a - r[col] * b) % p for a, b in zip(r, pivot)] for r in rows]
        out = [[(a - r[col] * b) % p for a, b in zip(r, pivot)] for r in out]
        out.append(pivot)
        rows = [r for r in rows if any(r)]
    return tuple(tuple(r) for r in out)


def _spin(v: list[int], actions: list[list[list[int]]], p: int) -> tuple:
    """Smallest invariant subspace of F_p^m containing v."""
    basis = _rref_mod_p([v], p)
    frontier = [list(v)]
    while frontier:
        nxt = []
        for w in frontier:
            for A in actions:
                image = [sum(w[i] * A[i][j] for i in range(len(w))) % p for j in range(len(A[0]))]
                grown = _rref_mod_p(list(basis) + [image], p)
                if len(grown) > len(basis):
                    basis = grown
                    nxt.append(image)
        frontier = nxt
    return basis


def _projective_points(m: int, p: int):
    for lead in range(m):
        tail = m - lead - 1
        for k in range(p ** tail):
            v = [0] * lead + [1]
            for _ in range(tail):
                v.append(k % p)
                k //= p
            yield v


def invariant_subspaces(actions: list[list[list[int]]], m: int, p: int) -> list[tuple]:
    """All proper nonzero subspaces of F_p^m invariant under the integer matrices mod p."""
    cyclic = set()
    for v in _projective_points(m, p):
        cyclic.add(_spin(v, actions, p))
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for a in frontier:
            for b in cyclic:
                s = _rref_mod_p(list(a) + list(b), p)
                if s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted((s for s in found if len(s) < m), key=lambda s: (len(s), s))


def centerings(G, L: Lattice, p: int, include_scaled: bool = False) -> list[Lattice]:
    """Invariant lattices M with pL < M < L, one per proper nonzero invariant subspace of L/pL.

    ``include_scaled`` also returns pL itself (the zero subspace).
    """
    acting = _acting(G)
    B = L.basis
    Binv = B.inv()
    actions = []
    for a in acting:
        A = B * a * Binv
        if not is_integral(A):
            raise NotInvariant("lattice is not invariant under the acting matrices")
        actions.append(to_int_rows(A))
    m = L.rank
    rows = L.rows()
    result = []
    for W in invariant_subspaces(actions, m, p):
        gens = [[qq(p) * a for a in r] for r in rows]
        for w in W:
            gens.append([sum((qq(w[i]) * rows[i][j] for i in range(m)), qq(0)) for j in range(L.dim)])
        result.append(Lattice.span(gens, L.dim))
    if include_scaled:
        result.append(scale_lattice(L, p))
    logger.debug(f"centerings at p={p}: {len(result)}")
    return sorted(result, key=lambda M: M.key)


# --- lattice graph ---------------------------------------------------------


@dataclass
class CenteringGraph:
    nodes: list[Lattice]
    edges: list[tuple[int, int, int]]
    class_reps: list[Lattice]
    class_of: list[int]
    primes: list[int] = field(default_factory=list)

    @property
    def class_count(self) -> int:
        return len(self.class_reps)


def canonical_scaling(L: Lattice, F: ExactMatrix) -> Lattice:
    """Rescale L so that its Gram matrix with respect to F has squarefree integer content."""
    c = content(gram(L, F))
    _, r = square_class(c)
    return scale_lattice(L, 1 / r)


def hom_isomorphism(
    L1: Lattice, L2: Lattice, F: ExactMatrix, end_basis: list[ExactMatrix]
) -> ExactMatrix | None:
    """An x in the commuting algebra with L1 x = L2, or None.

    Hom(L1, L2) is a lattice in the commuting algebra; its elements are searched
    in order of Tr(x F x^T F^-1), which is m * D^(2/m) for similitudes of
    determinant D, up to four times that value.
    """
    m = L1.dim
    k = len(end_basis)
    B2inv = L2.basis.inv()
    images = [(L1.basis * e * B2inv).to_list() for e in end_basis]
    columns = [[images[i][r][c] for i in range(k)] for r in range(m) for c in range(m)]
    hom = dual_lattice(Lattice.span(columns, k), identity(k))
    target = abs(to_fraction(L2.basis.det()) / to_fraction(L1.basis.det()))
    Finv = F.inv()
    Q = matrix([[trace(a * F * b.transpose() * Finv) for b in end_basis] for a in end_basis], k)
    bound = Fraction(ceil(4 * m * float(target) ** (2 / m) * 1000) + 1, 1000)
    for c in short_vectors(hom, Q, bound):
        x = zeros(m, m)
        for ci, e in zip(c, end_basis):
            if ci != 0:
                x = x + scale(e, ci)
        if abs(to_fraction(x.det())) == target:
            return x
    return None


def lattice_classes(
    G,
    L0: Lattice,
    F: ExactMatrix,
    primes: list[int] | None = None,
    node_cap: int | None = None,
    merge_isomorphic: bool = True,
) -> CenteringGraph:
    """Breadth-first closure of centerings, with isomorphism classes.

    With ``merge_isomorphic`` a new centering is identified with the first node
    it is isomorphic to (L x = M for an invertible x in the commuting algebra),
    so every node is its own class and the closure stays finite when a prime
    splits in the commuting field. Without it nodes are identified only up to
    rational scaling and the classes are computed afterwards.
    """
    acting = _acting(G)
    if not is_invariant(L0, acting):
        raise NotInvariant("start lattice is not invariant")
    if primes is None:
        if not isinstance(G, MatrixGroup):
            raise ValueError("primes are required when acting by an order basis")
        primes = primefactors(G.order)
    primes = sorted(primes)
    cap = node_cap if node_cap is not None else get_settings().node_cap
    end_basis = commuting_basis(acting, L0.dim)
    start = canonical_scaling(L0, F)
    nodes = [start]
    position = {start: 0}
    edges: list[tuple[int, int, int]] = []
    src = 0
    while src < len(nodes):
        for p in primes:
            for M in centerings(acting, nodes[src], p):
                M = canonical_scaling(M, F)
                target = position.get(M)
                if target is None and merge_isomorphic:
                    target = next(
                        (
                            i
                            for i, N in enumerate(nodes)
                            if hom_isomorphism(N, M, F, end_basis) is not None
                        ),
                        None,
                    )
                if target is None:
                    if len(nodes) >= cap:
                        raise OrderCapExceeded(f"lattice graph exceeds {cap} nodes")
                    target = len(nodes)
                    nodes.append(M)
                position[M] = target
                edges.append((src, target, p))
        src += 1
    if merge_isomorphic:
        reps = list(nodes)
        class_of = list(range(len(nodes)))
    else:
        reps = []
        class_of = []
        for L in nodes:
            for idx, R in enumerate(reps):
                if hom_isomorphism(R, L, F, end_basis) is not None:
                    class_of.append(idx)
                    break
            else:
                class_of.append(len(reps))
                reps.append(L)
    logger.info(f"lattice graph: {len(nodes)} nodes, {len(reps)} classes, primes {primes}")
    return CenteringGraph(nodes, edges, reps, class_of, primes)
