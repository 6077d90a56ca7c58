"""
Automorphisms and isometries
============================

Backtracking over short lattice vectors: the automorphism group of a lattice
preserving a tuple of forms, simultaneous isometries between two such
tuples, K-linear automorphisms and joint stabilizers of lattices.

Everything runs in the coordinates of the lattice basis. Forms become
integer Gram matrices (scaled per form), short vectors become integer
coefficient rows and all pruning uses precomputed numpy pair tables.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import permutations
from math import lcm, prod

import numpy as np

from simflat.config import get_settings
from simflat.errors import BadInput, DimMismatch, GeneratorMismatch, ReducibleEndomorphism
from simflat.exact import (
    ExactMatrix,
    denominator,
    from_numpy,
    identity,
    is_skew,
    key,
    minimal_polynomial,
    power,
    same,
    scale,
    to_fraction,
    to_numpy,
    zz_matrix,
)
from simflat.lattice import FormTuple, Lattice, gram, short_coefficients
from simflat.matgrp import MatrixGroup, closure

logger = logging.getLogger(__name__)


@dataclass
class AutResult:
    """Generators and order of an automorphism group of ``lattice``."""

    generators: list[ExactMatrix]
    order: int
    base_orbits: list[int]
    lattice: Lattice
    forms: FormTuple | None = None
    notes: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def group(self, name: str = "") -> MatrixGroup:
        return MatrixGroup(self.generators, self.dim, name)

    def coefficient_generators(self) -> list[np.ndarray]:
        B = self.lattice.basis
        Binv = B.inv()
        return [to_numpy(B * g * Binv) for g in self.generators]


class _Side:
    """Short vectors, fingerprints and pair tables of one lattice with its forms."""

    def __init__(self, L: Lattice, grams: list[ExactMatrix], scales: list[int]):
        self.lattice = L
        self.grams = [to_numpy(scale(G, s)) for G, s in zip(grams, scales)]
        coeffs = _spanning_vectors(grams[0])
        half = np.array(coeffs, dtype=np.int64).reshape(len(coeffs), L.rank)
        self.vectors = np.concatenate([half, -half])
        self.index = {v.tobytes(): i for i, v in enumerate(self.vectors)}
        self.tables = [self.vectors @ G @ self.vectors.T for G in self.grams]
        self.fps = [self._fingerprint(i) for i in range(len(self.vectors))]
        by_fp: dict[tuple, list[int]] = {}
        for i, fp in enumerate(self.fps):
            by_fp.setdefault(fp, []).append(i)
        self.by_fp = {fp: np.array(ix, dtype=np.int64) for fp, ix in by_fp.items()}

    def _fingerprint(self, i: int) -> tuple:
        diag = tuple(int(T[i, i]) for T in self.tables)
        rows = tuple(np.sort(T[i]).tobytes() for T in self.tables)
        return diag + rows

    def permutation(self, g: np.ndarray) -> np.ndarray:
        images = self.vectors @ g
        return np.array([self.index[v.tobytes()] for v in images], dtype=np.int64)


def _spanning_vectors(G0: ExactMatrix) -> list[tuple[int, ...]]:
    """Short vectors (one per ± pair) up to the first norm level that spans Q^m."""
    m = G0.shape[0]
    rows = [[to_fraction(a) for a in row] for row in G0.to_list()]
    bound = min(rows[i][i] for i in range(m))
    while True:
        coeffs = short_coefficients(G0, bound)
        if coeffs and np.linalg.matrix_rank(np.array(coeffs, dtype=float)) == m:
            break
        bound *= 2
    kept: list[tuple[int, ...]] = []
    level = None
    for v in coeffs:
        norm = sum(v[i] * rows[i][j] * v[j] for i in range(m) if v[i] for j in range(m) if v[j])
        if level is not None and norm != level:
            if np.linalg.matrix_rank(np.array(kept, dtype=float)) == m:
                break
        level = norm
        kept.append(v)
    return kept


class _Search:
    """Backtrack mapping a base of side ``a`` into side ``b`` compatibly with all tables."""

    def __init__(self, a: _Side, b: _Side):
        self.a, self.b = a, b
        self.m = a.lattice.rank
        self.base = self._choose_base()
        Bv = a.vectors[self.base]
        adj, det = zz_matrix(Bv.tolist(), self.m).adj_det()
        self.adj = np.array([[int(x) for x in row] for row in adj.to_list()], dtype=object)
        self.det = int(det)
        self.nodes = 0

    def _choose_base(self) -> list[int]:
        """Independent vectors, each chosen with the fewest compatible images."""
        a = self.a
        chosen: list[int] = []
        while len(chosen) < self.m:
            best, best_count = None, None
            for v in range(len(a.vectors)):
                trial = a.vectors[chosen + [v]].astype(float)
                if np.linalg.matrix_rank(trial) <= len(chosen):
                    continue
                count = len(self._compatible(v, chosen, chosen, a))
                if best_count is None or count < best_count:
                    best, best_count = v, count
            chosen.append(best)
        return chosen

    def _compatible(self, v: int, prefix: list[int], images: list[int], side: _Side) -> np.ndarray:
        cand = side.by_fp.get(self.a.fps[v])
        if cand is None:
            return np.zeros(0, dtype=np.int64)
        for i, img in zip(prefix, images):
            for Ta, Tb in zip(self.a.tables, side.tables):
                cand = cand[Tb[cand, img] == Ta[v, i]]
                cand = cand[Tb[img, cand] == Ta[i, v]]
                if not len(cand):
                    return cand
        return cand

    def candidates(self, j: int, images: list[int]) -> np.ndarray:
        return self._compatible(self.base[j], self.base[:j], images, self.b)

    def leaf(self, images: list[int]) -> np.ndarray | None:
        X = self.b.vectors[images].astype(object)
        num = self.adj @ X
        if any(x % self.det for x in num.flat):
            return None
        return (num // self.det).astype(np.int64)

    def extend(self, images: list[int]) -> np.ndarray | None:
        self.nodes += 1
        j = len(images)
        if j == self.m:
            return self.leaf(images)
        for w in self.candidates(j, images):
            g = self.extend(images + [int(w)])
            if g is not None:
                return g
        return None


def _orbit(start: int, perms: list[np.ndarray]) -> set[int]:
    orbit = {start}
    queue = [start]
    while queue:
        x = queue.pop()
        for p in perms:
            y = int(p[x])
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    return orbit


def _integer_grams(L: Lattice, forms: list[ExactMatrix]) -> list[ExactMatrix]:
    return [gram(L, f) for f in forms]


def _reduce_generators(gens: list[np.ndarray], order: int, cap: int) -> list[np.ndarray]:
    """Shrink a generating set by seeded greedy ascent then removal."""
    if not gens or order > cap:
        return gens
    rng = random.Random(get_settings().seed)
    pool = list(gens)
    rng.shuffle(pool)
    chosen: list[np.ndarray] = []
    reached = {np.eye(gens[0].shape[0], dtype=np.int64).tobytes()}
    for g in pool:
        if g.tobytes() in reached:
            continue
        chosen.append(g)
        reached = {x.tobytes() for x in closure(chosen, order)}
        if len(reached) == order:
            break
    if len(reached) != order:
        raise GeneratorMismatch(f"generators close to {len(reached)} elements, expected {order}")
    for g in list(chosen):
        trial = [h for h in chosen if h is not g]
        if trial and len(closure(trial, order)) == order:
            chosen = trial
    return chosen


def aut_group(L: Lattice, T: FormTuple, reduce_cap: int | None = None) -> AutResult:
    """{g : Lg = L and g f g^T = f for every form f of T}."""
    if T.dim != L.dim:
        raise DimMismatch("form tuple and lattice live in different dimensions")
    grams = _integer_grams(L, T.forms)
    side = _Side(L, grams, [denominator(G) for G in grams])
    search = _Search(side, side)
    m = L.rank
    base = search.base
    level_gens: list[list[np.ndarray]] = [[] for _ in range(m)]
    perms: list[list[np.ndarray]] = [[] for _ in range(m)]
    orbit_sizes = [1] * m
    for lev in reversed(range(m)):
        acting = [p for k in range(lev, m) for p in perms[k]]
        orbit = _orbit(base[lev], acting)
        for w in search.candidates(lev, base[:lev]):
            w = int(w)
            if w in orbit:
                continue
            g = search.extend(base[:lev] + [w])
            if g is None:
                continue
            level_gens[lev].append(g)
            perm = side.permutation(g)
            perms[lev].append(perm)
            acting.append(perm)
            orbit = _orbit(base[lev], acting)
        orbit_sizes[lev] = len(orbit)
    order = prod(orbit_sizes)
    coeff_gens = [g for gs in level_gens for g in gs]
    cap = reduce_cap if reduce_cap is not None else get_settings().reduce_cap
    coeff_gens = _reduce_generators(coeff_gens, order, cap)
    B = L.basis
    Binv = B.inv()
    generators = [Binv * from_numpy(g) * B for g in coeff_gens]
    logger.debug(
        f"aut_group: {len(side.vectors)} vectors, {search.nodes} nodes, orbits {orbit_sizes}"
    )
    return AutResult(generators, order, orbit_sizes, L, T)


def aut_group_K(L: Lattice, F: ExactMatrix, S: ExactMatrix, reduce_cap: int | None = None) -> AutResult:
    """Aut_K(L, F) for K = Q[e], e = S F^{-1}, via the extra forms e^j F."""
    if not is_skew(S):
        raise BadInput("S is not skew-symmetric")
    e = S * F.inv()
    if all(a == 0 for row in S.to_list() for a in row):
        raise ReducibleEndomorphism("S = 0 gives K = Q")
    poly = minimal_polynomial(e)
    if not poly.is_irreducible:
        raise ReducibleEndomorphism(f"minimal polynomial {poly.as_expr()} of SF^-1 is reducible")
    extras = [power(e, j) * F for j in range(1, poly.degree())]
    result = aut_group(L, FormTuple(F, tuple(extras)), reduce_cap)
    result.notes["minpoly"] = str(poly.as_expr())
    return result


def isometry(L1: Lattice, T1: FormTuple, L2: Lattice, T2: FormTuple) -> ExactMatrix | None:
    """T with L1 T = L2 and T f2 T^T = f1 for every pair of forms, or None."""
    if L1.dim != L2.dim or len(T1.forms) != len(T2.forms) or T1.dim != T2.dim:
        raise DimMismatch("isometry needs tuples of the same shape")
    grams1 = _integer_grams(L1, T1.forms)
    grams2 = _integer_grams(L2, T2.forms)
    for G1, G2 in zip(grams1, grams2):
        if G1.det() != G2.det():
            return None
    scales = [lcm(denominator(G1), denominator(G2)) for G1, G2 in zip(grams1, grams2)]
    a = _Side(L1, grams1, scales)
    b = _Side(L2, grams2, scales)
    if len(a.vectors) != len(b.vectors) or a.by_fp.keys() != b.by_fp.keys():
        return None
    if any(len(a.by_fp[k]) != len(b.by_fp[k]) for k in a.by_fp):
        return None
    search = _Search(a, b)
    g = search.extend([])
    if g is None:
        return None
    return L1.basis.inv() * from_numpy(g) * L2.basis


def stabilize_lattices(G: AutResult, Ls: list[Lattice], reduce_cap: int | None = None) -> AutResult:
    """Subgroup of G fixing every lattice of ``Ls``, by orbit-stabilizer."""
    start = tuple(Ls)
    transversal: dict[tuple, ExactMatrix] = {start: identity(G.dim)}
    queue = [start]
    schreier: dict[tuple, ExactMatrix] = {}
    for point in queue:
        t = transversal[point]
        for s in G.generators:
            image = tuple(Lattice.from_generators(M.basis * s) for M in point)
            ts = t * s
            if image not in transversal:
                transversal[image] = ts
                queue.append(image)
                continue
            h = ts * transversal[image].inv()
            if not same(h, identity(G.dim)):
                schreier.setdefault(key(h), h)
    order = G.order // len(transversal)
    B = G.lattice.basis
    Binv = B.inv()
    coeff = [to_numpy(B * h * Binv) for h in schreier.values()]
    cap = reduce_cap if reduce_cap is not None else get_settings().reduce_cap
    coeff = _reduce_generators(coeff, order, cap)
    generators = [Binv * from_numpy(h) * B for h in coeff]
    logger.debug(f"stabilize_lattices: orbit of length {len(transversal)}, order {order}")
    return AutResult(generators, order, [len(transversal)], G.lattice, G.forms)


def brute_force_aut_order(L: Lattice, F: ExactMatrix) -> int:
    """Count automorphisms by trying every ordered image of a base among the spanning vectors."""
    G = gram(L, F)
    m = L.rank
    half = np.array(_spanning_vectors(G), dtype=np.int64).reshape(-1, m)
    vectors = np.concatenate([half, -half])
    base: list[int] = []
    for i in range(len(vectors)):
        if np.linalg.matrix_rank(vectors[base + [i]].astype(float)) > len(base):
            base.append(i)
        if len(base) == m:
            break
    adj, det = zz_matrix(vectors[base].tolist(), m).adj_det()
    adj = np.array([[int(x) for x in row] for row in adj.to_list()], dtype=object)
    det = int(det)
    Gint = to_numpy(scale(G, denominator(G))).astype(object)
    count = 0
    for images in permutations(range(len(vectors)), m):
        num = adj @ vectors[list(images)].astype(object)
        if any(x % det for x in num.flat):
            continue
        g = num // det
        if (g @ Gint @ g.T == Gint).all():
            count += 1
    return count
