"""
Z-orders
========

Orders in the enveloping algebra of a finite matrix group and the radical
idealizer process that turns the group ring image into a hereditary order,
followed by the generalized Bravais group built from its lattices.

An order is stored as a rank-k lattice of flattened m x m matrices; ideals
are stored by their coordinates with respect to the order's basis.
"""

import logging
from dataclasses import dataclass
from math import isqrt

import numpy as np
from sympy import factorint

from simflat.autiso import aut_group, stabilize_lattices
from simflat.config import get_settings
from simflat.errors import ChainDiverged, NotHomogeneous, OrderCapExceeded
from simflat.exact import (
    ExactMatrix,
    flatten,
    identity,
    is_integral,
    matrix,
    numer,
    qq,
    to_int_rows,
    trace,
    unflatten,
)
from simflat.invlat import lattice_classes
from simflat.lattice import FormTuple, Lattice, dual_lattice, intersect
from simflat.matgrp import MatrixGroup, end_algebra, fixed_forms

logger = logging.getLogger(__name__)

_SPAN_STEPS = 200


class ZOrder:
    """A Z-order: Z-span of integral-structure matrices containing the identity."""

    __slots__ = ("m", "lattice", "basis", "_pivots", "_solve")

    def __init__(self, lattice: Lattice, m: int):
        self.m = m
        self.lattice = lattice
        self.basis = [unflatten(row, m) for row in lattice.rows()]
        rows = lattice.rows()
        self._pivots = [next(j for j, a in enumerate(r) if a != 0) for r in rows]
        self._solve = matrix([[r[p] for p in self._pivots] for r in rows]).inv()

    @classmethod
    def from_matrices(cls, mats: list[ExactMatrix], m: int) -> "ZOrder":
        return cls(Lattice.span([flatten(M) for M in mats], m * m), m)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def coordinates(self, x: ExactMatrix) -> list:
        """Coefficients of x in the order's basis (rational when x is outside the order)."""
        v = flatten(x)
        c = matrix([[v[p] for p in self._pivots]]) * self._solve
        if flatten(c * self.lattice.basis) != v:
            raise ValueError("matrix is outside the algebra spanned by the order")
        return c.to_list()[0]

    def regular(self, y: ExactMatrix) -> ExactMatrix:
        """Matrix of x -> x y on the order's coordinates (integral for y in the order)."""
        return matrix([self.coordinates(b * y) for b in self.basis])

    def __eq__(self, other) -> bool:
        return isinstance(other, ZOrder) and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash(self.lattice)

    def __repr__(self) -> str:
        return f"ZOrder(rank={self.rank}, m={self.m})"


@dataclass
class OrderIdeal:
    order: ZOrder
    coords: Lattice

    @property
    def basis(self) -> list[ExactMatrix]:
        out = []
        for row in self.coords.rows():
            x = identity(self.order.m) * qq(0)
            for c, b in zip(row, self.order.basis):
                if c != 0:
                    x = x + b * c
            out.append(x)
        return out


def is_order(mats: list[ExactMatrix], m: int) -> bool:
    """True iff the Z-span of ``mats`` contains I and is closed under products."""
    O = ZOrder.from_matrices(mats, m)
    try:
        unit = matrix([O.coordinates(identity(m))])
        return is_integral(unit) and all(is_integral(O.regular(y)) for y in O.basis)
    except ValueError:
        return False


def contains(O1: ZOrder, O2: ZOrder) -> bool:
    """True iff O2 is contained in O1."""
    try:
        return all(is_integral(matrix([O1.coordinates(b)])) for b in O2.basis)
    except ValueError:
        return False


def enveloping_order(N: MatrixGroup) -> ZOrder:
    """Z-span of all elements of N, closed from I by right multiplication with generators."""
    m = N.dim
    span = Lattice.span([flatten(identity(m))], m * m)
    for _ in range(_SPAN_STEPS):
        mats = [unflatten(r, m) for r in span.rows()]
        grown = Lattice.span(
            span.rows() + [flatten(x * g) for x in mats for g in N.generators], m * m
        )
        if grown == span:
            return ZOrder(span, m)
        span = grown
    raise OrderCapExceeded("Z-span of the group did not stabilize")


def _trace_gram(O: ZOrder) -> ExactMatrix:
    return matrix([[trace(a * b) for b in O.basis] for a in O.basis])


def discriminant(O: ZOrder, reduced: bool = False) -> int:
    """det of the trace form on the basis; ``reduced`` uses the reduced trace for quaternion orders."""
    d = _trace_gram(O).det()
    if reduced and O.rank == 4 and not _commutative(O):
        # matrix trace is m/2 times the reduced trace
        factor = (O.m // 2) ** 4
        return isqrt(abs(numer(d)) // factor)
    return numer(d)


def _commutative(O: ZOrder) -> bool:
    return all((a * b).to_list() == (b * a).to_list() for a in O.basis for b in O.basis)


def _radical_mod_p(O: ZOrder, p: int) -> list[list[int]]:
    """Coordinates (mod p) of a basis of the radical of O/pO.

    Uses the right regular representation and the trace functionals
    g_i(x) = Tr(x^(p^i)) / p^i mod p on integer lifts.
    """
    k = O.rank
    reps = [np.array(to_int_rows(O.regular(b)), dtype=object) for b in O.basis]
    current = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    levels = 0
    while p ** (levels + 1) <= k:
        levels += 1
    for i in range(levels + 1):
        q = p ** i
        if not current:
            break
        phi = []
        for u in current:
            lift = sum((c * R for c, R in zip(u, reps) if c), np.zeros((k, k), dtype=object))
            row = []
            for R in reps:
                x = lift.dot(R)
                xq = np.identity(k, dtype=object)
                for _ in range(q):
                    xq = xq.dot(x)
                t = int(np.trace(xq))
                row.append((t // q) % p)
            phi.append(row)
        kernel = _left_kernel_mod_p(phi, p)
        current = [
            [sum(a * u[j] for a, u in zip(coeffs, current)) % p for j in range(k)]
            for coeffs in kernel
        ]
    return current


def _left_kernel_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {a : sum_t a_t rows[t] = 0 mod p}."""
    n = len(rows)
    width = len(rows[0]) if rows else 0
    aug = [[x % p for x in rows[t]] + [1 if s == t else 0 for s in range(n)] for t in range(n)]
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, n) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[width:] for row in aug[r:]]


def arithmetical_radical(O: ZOrder) -> OrderIdeal:
    """Intersection over primes p | disc of pO + (lift of the radical of O/pO)."""
    disc = discriminant(O)
    k = O.rank
    coords = Lattice.standard(k)
    for p in sorted(factorint(abs(disc))):
        rad = _radical_mod_p(O, p)
        gens = [[qq(p) if i == j else qq(0) for j in range(k)] for i in range(k)]
        gens += [[qq(x) for x in r] for r in rad]
        Jp = Lattice.span(gens, k)
        logger.debug(f"radical at p={p}: dimension {len(rad)} of {k}")
        coords = intersect(coords, Jp)
    return OrderIdeal(O, coords)


def right_idealizer(I: OrderIdeal) -> ZOrder:
    """{x : I x is contained in I}."""
    O = I.order
    k = O.rank
    C = I.coords.basis
    Cinv = C.inv()
    regs = [O.regular(b) for b in O.basis]
    vectors = []
    for w in I.coords.rows():
        wm = matrix([w])
        images = [(wm * R * Cinv).to_list()[0] for R in regs]
        for s in range(k):
            vectors.append([images[j][s] for j in range(k)])
    idealizer = dual_lattice(Lattice.span(vectors, k), identity(k))
    mats = []
    for row in idealizer.rows():
        x = identity(O.m) * qq(0)
        for c, b in zip(row, O.basis):
            if c != 0:
                x = x + b * c
        mats.append(x)
    return ZOrder.from_matrices(mats, O.m)


def radical_idealizer_chain(O: ZOrder, cap: int | None = None) -> tuple[ZOrder, int]:
    """Iterate radical and right idealizer to the hereditary fixed point; returns (order, steps)."""
    cap = cap if cap is not None else get_settings().chain_cap
    steps = 0
    while True:
        nxt = right_idealizer(arithmetical_radical(O))
        if nxt == O:
            logger.info(f"radical idealizer chain stable after {steps} step(s)")
            return O, steps
        steps += 1
        if steps > cap:
            raise ChainDiverged(f"no fixed point within {cap} steps")
        O = nxt


def bravais_group(N: MatrixGroup, F: ExactMatrix) -> MatrixGroup:
    """Generalized Bravais group: automorphisms of the hereditary order's lattices fixing N's forms."""
    if not end_algebra(N).simple:
        raise NotHomogeneous("the natural module of N is not homogeneous")
    order, _ = radical_idealizer_chain(enveloping_order(N))
    m = N.dim
    rows = [r for b in order.basis for r in b.to_list()]
    L0 = Lattice.span(rows, m)
    primes = sorted(factorint(abs(discriminant(order))))
    graph = lattice_classes(order.basis, L0, F, primes=primes, merge_isomorphic=False)
    forms = fixed_forms(N).all()
    A = aut_group(graph.class_reps[0], FormTuple(F, tuple(forms)))
    if len(graph.nodes) > 1:
        A = stabilize_lattices(A, graph.nodes)
    logger.info(f"Bravais group of {N!r}: order {A.order}")
    G = A.group(name=f"B({N.name})" if N.name else "")
    return G
