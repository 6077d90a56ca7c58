"""
Supergroup enumeration
======================

The m-parameter argument for a group U whose commuting algebra is a CM
field K: every s.i.m.f. supergroup with the same K is Aut_K(L, F) for one
of finitely many normalized pairs (L, F), where L runs over U-invariant
lattice classes and F over rescalings supported on a finite prime set.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from itertools import combinations
from math import prod

from sympy import Poly, primefactors

from simflat.autiso import AutResult, aut_group_K, isometry
from simflat.config import get_settings
from simflat.errors import UnsupportedField
from simflat.exact import ExactMatrix, minimal_polynomial, qq, scale, square_class, to_fraction
from simflat.families import minkowski_bound
from simflat.invlat import lattice_classes
from simflat.lattice import FormTuple, IntegralPair, Lattice, normalize_pair, scale_to_primitive
from simflat.matgrp import (
    EndAlgebra,
    MatrixGroup,
    end_algebra,
    positive_form,
    self_adjoint_elements,
    skew_adjoint_elements,
    totally_complex_elements,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldData:
    label: str
    pi_set: frozenset
    class_number: int
    unit_sign_data: str
    discriminant: int


# Totally real fields with class number one whose fundamental unit has
# norm -1 (or which have no fundamental unit), so that Pi(K) is empty.
FIELDS = {
    "Q": FieldData("Q", frozenset(), 1, "units +-1", 1),
    "Q(sqrt2)": FieldData("Q(sqrt2)", frozenset(), 1, "N(1 + sqrt2) = -1", 8),
    "Q(sqrt5)": FieldData("Q(sqrt5)", frozenset(), 1, "N((1 + sqrt5)/2) = -1", 5),
}


def _field(K) -> FieldData:
    label = K.label if isinstance(K, FieldData) else str(K)
    if label not in FIELDS:
        raise UnsupportedField(f"no field data shipped for {label}")
    return FIELDS[label]


def pi_tilde(l: int, K) -> set[int]:
    """Prime divisors of l together with Pi(K)."""
    return set(primefactors(l)) | set(_field(K).pi_set)


def real_subfield(E: EndAlgebra, F: ExactMatrix) -> FieldData:
    """Identify the F-self-adjoint part of a CM field End among the shipped fields."""
    real = self_adjoint_elements(E, F)
    if len(real) == 1:
        return FIELDS["Q"]
    if len(real) == 2:
        for a in real:
            poly: Poly = minimal_polynomial(a)
            if poly.degree() == 2:
                _, b, c = (to_fraction(qq(x)) for x in poly.all_coeffs())
                s, _ = square_class(b * b - 4 * c)
                for data in FIELDS.values():
                    if data.discriminant in (s, 4 * s):
                        return data
                raise UnsupportedField(f"real quadratic field Q(sqrt{s}) is not shipped")
    raise UnsupportedField(f"totally real subfield of degree {len(real)} is not shipped")


@dataclass
class _Setup:
    end: EndAlgebra
    form: ExactMatrix
    real: FieldData


def _setup(U: MatrixGroup) -> _Setup:
    E = end_algebra(U)
    if not (E.is_division and E.commutative):
        raise UnsupportedField("the commuting algebra of U is not a field")
    F0 = positive_form(U)
    return _Setup(E, F0, real_subfield(E, F0))


def normalized_primitive(L: Lattice, F: ExactMatrix) -> IntegralPair:
    """Normalize an integral pair, rescale to content 1, repeat until stable."""
    pair = IntegralPair(L, F)
    for _ in range(4):
        q = normalize_pair(pair)
        nxt = scale_to_primitive(q.lattice, q.form)
        if nxt == pair:
            break
        pair = nxt
    return pair


def _squarefree_divisors(primes: list[int]) -> list[int]:
    return sorted(prod(c) for k in range(len(primes) + 1) for c in combinations(primes, k))


def _k_tuple(pair: IntegralPair, skew: list[ExactMatrix]) -> FormTuple:
    return FormTuple(pair.form, tuple(e * pair.form for e in skew))


def candidate_pairs(U: MatrixGroup, bound_order: int | None = None) -> list[IntegralPair]:
    """Normalized pairs (L_i, c F) up to K-isometry, c supported on pi_tilde(bound_order, K+)."""
    setup = _setup(U)
    bound_order = bound_order or minkowski_bound(U.dim)
    primes = sorted(pi_tilde(bound_order, setup.real))
    graph = lattice_classes(U, U.lattice(), setup.form)
    skew = skew_adjoint_elements(setup.end, setup.form)
    jobs = [(L, c) for L in graph.class_reps for c in _squarefree_divisors(primes)]
    found: dict[int, IntegralPair] = {}
    with ThreadPoolExecutor(max_workers=get_settings().workers) as executor:
        futures = {
            executor.submit(
                normalized_primitive, L, scale(scale_to_primitive(L, setup.form).form, c)
            ): i
            for i, (L, c) in enumerate(jobs)
        }
        for future in as_completed(futures):
            found[futures[future]] = future.result()
    pairs: list[IntegralPair] = []
    for i in sorted(found):
        pair = found[i]
        if not set(primefactors(pair.det)) <= set(primes):
            continue
        tup = _k_tuple(pair, skew)
        if any(
            q.det == pair.det
            and isometry(q.lattice, _k_tuple(q, skew), pair.lattice, tup) is not None
            for q in pairs
        ):
            continue
        pairs.append(pair)
    logger.info(f"candidate pairs for {U!r}: {len(pairs)} from {len(jobs)} rescalings")
    return pairs


def _is_maximal(A: AutResult, pair: IntegralPair, e: ExactMatrix) -> bool:
    """No invariant pair of A has a larger K-automorphism group."""
    G = A.group()
    for L in lattice_classes(G, pair.lattice, pair.form).class_reps:
        q = normalized_primitive(L, scale_to_primitive(L, pair.form).form)
        if aut_group_K(q.lattice, q.form, e * q.form).order > A.order:
            return False
    return True


def same_k_class(p: IntegralPair, e: ExactMatrix, q: IntegralPair, f: ExactMatrix) -> bool:
    """Whether (p, e) and (q, f) are K-isometric; e and -e give the same Aut_K."""
    left = FormTuple(p.form, (e * p.form,))
    return any(
        isometry(p.lattice, left, q.lattice, FormTuple(q.form, (scale(f, s) * q.form,))) is not None
        for s in (1, -1)
    )


def simf_supergroups(U: MatrixGroup, bound_order: int | None = None) -> list[AutResult]:
    """Aut_K(L, F) over all candidate pairs and minimal totally complex K, maximal ones only."""
    setup = _setup(U)
    pairs = candidate_pairs(U, bound_order)
    fields = totally_complex_elements(setup.end, setup.form)
    if not fields:
        raise UnsupportedField("End(U) has no totally complex subfield")
    results: list[tuple[IntegralPair, ExactMatrix, AutResult]] = []
    for pair in pairs:
        for e in fields:
            A = aut_group_K(pair.lattice, pair.form, e * pair.form)
            duplicate = any(
                B.order == A.order and same_k_class(q, f, pair, e) for q, f, B in results
            )
            if not duplicate:
                results.append((pair, e, A))
    kept = [A for pair, e, A in results if _is_maximal(A, pair, e)]
    logger.info(f"s.i.m.f. supergroups of {U!r}: orders {[A.order for A in kept]}")
    return kept
