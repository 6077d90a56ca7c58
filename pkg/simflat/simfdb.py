"""
Classification database
=======================

Entries are triples of a positive definite form F, a skew form S and the
order o of Aut(Z^{2n}, {F, S}) together with an opaque name. The verifier
recomputes everything an entry claims; the recognizer conjugates an input
group onto the automorphism group of the matching entry.

File format, one block per entry, blocks separated by blank lines::

    4 48 GL23
    <F, four rows of integers>
    <S, four rows of integers>
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import ceil
from pathlib import Path

from sympy import Poly, cyclotomic_poly, expand, sqrt, totient
from sympy.ntheory import factorint

from simflat.autiso import AutResult, aut_group, isometry
from simflat.config import get_settings
from simflat.enumerate import normalized_primitive
from simflat.errors import BadInput, MalformedEntry, NoMatch, NotPositiveDefinite
from simflat.exact import (
    X,
    ExactMatrix,
    format_entry,
    identity,
    is_integral,
    is_positive_definite,
    is_skew,
    is_symmetric,
    key,
    kron,
    matrix,
    minimal_polynomial,
    power,
    qq,
    scale,
    to_fraction,
    trace,
    zeros,
)
from simflat.families import companion
from simflat.invlat import lattice_classes
from simflat.lattice import (
    FormTuple,
    IntegralPair,
    Lattice,
    dual_lattice,
    gram,
    is_normalized,
    perp_decompose,
    short_vectors,
)
from simflat.matgrp import (
    MatrixGroup,
    end_algebra,
    fixed_forms,
    is_rationally_irreducible,
    is_symplectic,
    positive_form,
    preserves,
    skew_adjoint_elements,
)

logger = logging.getLogger(__name__)

# the minimal-determinant check walks the whole lattice graph of the entry
MINIMALITY_MAX_DIM = 4


@dataclass(eq=False)
class DbEntry:
    dim: int
    F: ExactMatrix
    S: ExactMatrix
    order: int
    name: str
    line: int | None = None

    @property
    def endomorphism(self) -> ExactMatrix:
        return self.S * self.F.inv()

    @cached_property
    def minpoly(self) -> Poly:
        return minimal_polynomial(self.endomorphism)

    @cached_property
    def primitive(self) -> bool:
        """Z^{2n} does not split perpendicularly under F and the forms e^j F."""
        e = self.endomorphism
        extras = [power(e, j) * self.F for j in range(1, self.minpoly.degree())]
        return len(perp_decompose(Lattice.standard(self.dim), [self.F, *extras])) == 1

    @cached_property
    def automorphisms(self) -> AutResult:
        return aut_group(Lattice.standard(self.dim), FormTuple(self.F, (self.S,)))

    def group(self) -> MatrixGroup:
        return self.automorphisms.group(self.name)

    def __repr__(self) -> str:
        return f"DbEntry(dim={self.dim}, order={self.order}, name={self.name!r})"


@dataclass(frozen=True)
class DbRow:
    dim: int
    order: int
    name: str
    primitive: bool


@dataclass
class VerifyReport:
    name: str
    dim: int
    order_claimed: int
    order_found: int | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]


@dataclass
class Recognition:
    name: str
    conjugator: ExactMatrix
    entry: DbEntry


# --- loading ---------------------------------------------------------------


def _blocks(text: str) -> list[list[tuple[int, str]]]:
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if raw.strip().startswith("#"):
                continue
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append((lineno, line))
    return [b for b in blocks if b]


def _int_rows(rows: list[tuple[int, str]], dim: int) -> ExactMatrix:
    values = []
    for lineno, line in rows:
        tokens = line.split()
        if len(tokens) != dim:
            raise MalformedEntry(f"expected {dim} integers, found {len(tokens)}", lineno)
        try:
            values.append([int(t) for t in tokens])
        except ValueError:
            raise MalformedEntry(f"non-integer entry in {line!r}", lineno)
    return matrix(values, dim)


def parse_db(text: str) -> list[DbEntry]:
    entries = []
    for block in _blocks(text):
        lineno, header = block[0]
        parts = header.split(maxsplit=2)
        if len(parts) != 3:
            raise MalformedEntry(f"expected 'dim order name', got {header!r}", lineno)
        try:
            dim, order = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedEntry(f"dimension and order must be integers in {header!r}", lineno)
        if dim <= 0 or dim % 2 or order <= 0:
            raise MalformedEntry(f"bad dimension {dim} or order {order}", lineno)
        body = block[1:]
        if len(body) != 2 * dim:
            where = body[-1][0] if body else lineno
            raise MalformedEntry(f"entry {parts[2]!r} needs {2 * dim} rows, found {len(body)}", where)
        F = _int_rows(body[:dim], dim)
        S = _int_rows(body[dim:], dim)
        if not is_symmetric(F):
            raise MalformedEntry(f"F of {parts[2]!r} is not symmetric", body[0][0])
        if not is_skew(S):
            raise MalformedEntry(f"S of {parts[2]!r} is not skew-symmetric", body[dim][0])
        entries.append(DbEntry(dim, F, S, order, parts[2], lineno))
    return sorted(entries, key=lambda e: e.dim)


def db_load(path: str | Path) -> list[DbEntry]:
    entries = parse_db(Path(path).read_text())
    logger.info(f"loaded {len(entries)} database entries from {path}")
    return entries


def db_dump(entries: list[DbEntry]) -> str:
    blocks = []
    for e in entries:
        lines = [f"{e.dim} {e.order} {e.name}"]
        for M in (e.F, e.S):
            lines += [" ".join(format_entry(a) for a in row) for row in M.to_list()]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n" if blocks else ""


def default_db(dim: int) -> list[DbEntry]:
    """The packaged entries of one dimension (empty when none are shipped)."""
    path = get_settings().db_dir / f"simf_dim{dim}.txt"
    if not path.exists():
        logger.info(f"no database file for dimension {dim}")
        return []
    return db_load(path)


def db_list(entries: list[DbEntry]) -> list[DbRow]:
    return [DbRow(e.dim, e.order, e.name, e.primitive) for e in entries]


# --- allowed minimal polynomials -------------------------------------------


def _key(poly: Poly) -> tuple:
    return tuple(to_fraction(qq(c)) for c in poly.all_coeffs())


def _zeta_difference(k: int) -> ExactMatrix:
    C = companion(cyclotomic_poly(k, X, polys=True).all_coeffs())
    return C - C.inv()


@lru_cache(maxsize=None)
def _sporadic_minpolys() -> tuple[tuple, ...]:
    polys = []
    C = companion(cyclotomic_poly(26, X, polys=True).all_coeffs())
    polys.append(minimal_polynomial(C + power(C, 3) + power(C, 9)))
    for k, l in ((2, 10), (3, 10), (3, 16)):
        q = minimal_polynomial(_zeta_difference(l))
        half = q.degree() // 2
        polys.append(Poly(expand(k**half * q.as_expr().subs(X, X / sqrt(k))), X, domain="QQ"))
    A, B, C2 = (companion([1, 0, d]) for d in (1, 3, 5))
    I2 = identity(2)
    total = kron(kron(A, I2), I2) + kron(kron(I2, B), I2) + kron(kron(I2, I2), C2)
    polys.append(minimal_polynomial(total))
    return tuple(_key(p) for p in polys)


@lru_cache(maxsize=None)
def _cyclotomic_minpolys(degree: int) -> tuple[tuple, ...]:
    # zeta_k - zeta_k^-1 has degree phi(k) or phi(k)/2; phi(k) >= sqrt(k/2)
    polys = (
        minimal_polynomial(_zeta_difference(k))
        for k in range(6, 8 * degree * degree + 7, 2)
        if totient(k) in (degree, 2 * degree)
    )
    return tuple(_key(p) for p in polys if p.degree() == degree)


def is_allowed_minpoly(poly: Poly) -> bool:
    """X^2 + d with d squarefree, or one of the listed cyclotomic variants."""
    coeffs = _key(poly)
    if poly.degree() == 2 and coeffs[1] == 0:
        d = coeffs[2]
        return d.denominator == 1 and d > 0 and all(e == 1 for e in factorint(int(d)).values())
    if coeffs in _sporadic_minpolys():
        return True
    return coeffs in _cyclotomic_minpolys(poly.degree())


# --- verification ----------------------------------------------------------


def _has_minimal_determinant(entry: DbEntry) -> bool:
    G = entry.group()
    pair_det = IntegralPair(Lattice.standard(entry.dim), entry.F).det
    graph = lattice_classes(G, Lattice.standard(entry.dim), entry.F)
    for L in graph.class_reps:
        if normalized_primitive(L, entry.F).det < pair_det:
            return False
    return True


def db_verify(entry: DbEntry) -> VerifyReport:
    report = VerifyReport(entry.name, entry.dim, entry.order)
    checks = report.checks
    checks["form_positive_definite"] = is_positive_definite(entry.F)
    checks["skew"] = is_skew(entry.S) and entry.S.det() != 0
    if not checks["form_positive_definite"]:
        return report
    poly = entry.minpoly
    checks["minpoly_irreducible"] = poly.is_irreducible
    checks["minpoly_allowed"] = poly.is_irreducible and is_allowed_minpoly(poly)
    A = entry.automorphisms
    report.order_found = A.order
    checks["order"] = A.order == entry.order
    checks["form_invariant"] = all(preserves(g, entry.F) for g in A.generators)
    checks["skew_invariant"] = all(preserves(g, entry.S) for g in A.generators)
    checks["normalized"] = is_normalized(IntegralPair(Lattice.standard(entry.dim), entry.F))
    if entry.dim <= MINIMALITY_MAX_DIM:
        checks["minimal_determinant"] = _has_minimal_determinant(entry)
    else:
        report.skipped.append("minimal_determinant")
    if report.passed:
        logger.info(f"verified {entry.name}: order {A.order}")
    else:
        logger.warning(f"{entry.name} failed {report.failures()}")
    return report


def db_verify_all(entries: list[DbEntry]) -> list[VerifyReport]:
    reports: dict[int, VerifyReport] = {}
    with ThreadPoolExecutor(max_workers=get_settings().workers) as executor:
        futures = {executor.submit(db_verify, e): i for i, e in enumerate(entries)}
        for future in as_completed(futures):
            reports[futures[future]] = future.result()
    return [reports[i] for i in sorted(reports)]


def classes_distinct(entries: list[DbEntry]) -> list[tuple[str, str]]:
    """Pairs of same-dimension entries whose (F, S) are simultaneously isometric (up to S -> -S)."""
    clashes = []
    for i, a in enumerate(entries):
        for b in entries[:i]:
            if a.dim != b.dim or a.order != b.order:
                continue
            L = Lattice.standard(a.dim)
            ta = FormTuple(a.F, (a.S,))
            for S in (b.S, scale(b.S, -1)):
                if isometry(L, ta, L, FormTuple(b.F, (S,))) is not None:
                    clashes.append((b.name, a.name))
                    break
    return clashes


# --- recognition -----------------------------------------------------------


def _linear(basis: list[ExactMatrix], coeffs) -> ExactMatrix:
    n = basis[0].shape[0]
    out = zeros(n, n)
    for c, b in zip(coeffs, basis):
        if c:
            out = out + scale(b, c)
    return out


def _integral_coefficients(R: Lattice, mats: list[ExactMatrix]) -> Lattice:
    """{c : Gram(R, sum c_i M_i) is integral}, a lattice in Q^k."""
    grams = [gram(R, M).to_list() for M in mats]
    m = R.rank
    columns = [[g[r][c] for g in grams] for r in range(m) for c in range(m)]
    return dual_lattice(Lattice.span(columns, len(mats)), identity(len(mats)))


def _forms_with_det(R: Lattice, sym: list[ExactMatrix], F0: ExactMatrix, target, rounds: int = 6):
    """Invariant positive definite F with Gram(R, F) integral of determinant ``target``."""
    coeffs = _integral_coefficients(R, sym)
    F0inv = F0.inv()
    Q = matrix([[trace(a * F0inv * b * F0inv) for b in sym] for a in sym], len(sym))
    m = R.rank
    d0 = float(to_fraction(gram(R, F0).det()))
    bound = Fraction(ceil(1010 * m * (float(to_fraction(target)) / d0) ** (2 / m)), 1000)
    seen = set()
    for _ in range(rounds):
        for c in short_vectors(coeffs, Q, bound):
            for sign in (1, -1):
                F = scale(_linear(sym, c), sign)
                k = key(F)
                if k in seen or not is_positive_definite(F):
                    continue
                seen.add(k)
                if gram(R, F).det() == target:
                    yield F
        bound *= 2


def _elements_with_minpoly(R: Lattice, F: ExactMatrix, skew: list[ExactMatrix], target: tuple, bound):
    """e in K^- with eF integral on R, -Tr(e^2) <= bound and the given minimal polynomial."""
    if not skew:
        return
    coeffs = _integral_coefficients(R, [s * F for s in skew])
    Q = matrix([[-trace(a * b) for b in skew] for a in skew], len(skew))
    for c in short_vectors(coeffs, Q, bound):
        e = _linear(skew, c)
        for cand in (e, scale(e, -1)):
            if _key(minimal_polynomial(cand)) == target:
                yield cand


def _match(entry: DbEntry, reps: list[Lattice], sym, E, F0) -> ExactMatrix | None:
    target = Lattice.standard(entry.dim)
    db_forms = FormTuple(entry.F, (entry.S,))
    e_db = entry.endomorphism
    mu = _key(entry.minpoly)
    bound = to_fraction(-trace(e_db * e_db))
    det_F = entry.F.det()
    for R in reps:
        for F in _forms_with_det(R, sym, F0, det_F):
            skew = skew_adjoint_elements(E, F)
            for e in _elements_with_minpoly(R, F, skew, mu, bound):
                T = isometry(R, FormTuple(F, (e * F,)), target, db_forms)
                if T is not None:
                    return T
    return None


def _lands_in(G: MatrixGroup, T: ExactMatrix, entry: DbEntry) -> bool:
    Tinv = T.inv()
    for g in G.generators:
        h = Tinv * g * T
        if not (is_integral(h) and preserves(h, entry.F) and preserves(h, entry.S)):
            return False
    return True


def recognize(G: MatrixGroup, db: list[DbEntry] | None = None) -> Recognition:
    """Name of the database class of G and T with T^-1 G T = Aut(Z^{2n}, {F, S})."""
    if not is_symplectic(G):
        raise BadInput(f"{G!r} is not symplectic")
    if not is_rationally_irreducible(G):
        raise BadInput(f"{G!r} is not rationally irreducible")
    entries = default_db(G.dim) if db is None else db
    order = G.order
    candidates = [e for e in entries if e.dim == G.dim and e.order == order]
    if not candidates:
        raise NoMatch(f"no database entry of dimension {G.dim} and order {order}")
    F0 = positive_form(G)
    reps = lattice_classes(G, G.lattice(), F0).class_reps
    sym = fixed_forms(G).basis_sym
    E = end_algebra(G)
    if not sym:
        raise NotPositiveDefinite(f"{G!r} has no invariant symmetric form")
    found: dict[int, ExactMatrix | None] = {}
    with ThreadPoolExecutor(max_workers=get_settings().workers) as executor:
        futures = {
            executor.submit(_match, entry, reps, sym, E, F0): i
            for i, entry in enumerate(candidates)
        }
        for future in as_completed(futures):
            found[futures[future]] = future.result()
    for i in sorted(found):
        T = found[i]
        if T is not None and _lands_in(G, T, candidates[i]):
            entry = candidates[i]
            logger.info(f"recognized {G!r} as {entry.name}")
            return Recognition(entry.name, T, entry)
    raise NoMatch(f"{G!r} matches none of {len(candidates)} candidate entries")


__all__ = [
    "DbEntry",
    "DbRow",
    "VerifyReport",
    "Recognition",
    "parse_db",
    "db_load",
    "db_dump",
    "default_db",
    "db_list",
    "db_verify",
    "db_verify_all",
    "classes_distinct",
    "is_allowed_minpoly",
    "recognize",
]
