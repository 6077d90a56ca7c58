"""
Command line
============

``simflat <command> ...``. Matrices, lattices and groups are read from files
in the shared text formats; results go to stdout. Exit codes: 0 success,
1 negative answer, 2 no database match, 3 any other error.
"""

import argparse
import logging
import sys
from pathlib import Path

from simflat.autiso import aut_group, isometry
from simflat.config import get_settings
from simflat.enumerate import simf_supergroups
from simflat.errors import MalformedEntry, NoMatch, SimflatError
from simflat.exact import format_matrix, parse_matrices, parse_matrix
from simflat.families import (
    cp_co,
    cyclic_group,
    extraspecial_T,
    extraspecial_p,
    fermat_group,
    gl23_group,
    qd_group,
    quaternion_Q8,
    wall_h,
    wall_lattices,
)
from simflat.invlat import lattice_classes
from simflat.lattice import FormTuple, IntegralPair, Lattice, normalize_pair
from simflat.matgrp import (
    MatrixGroup,
    fixed_forms,
    is_rationally_irreducible,
    is_symplectic,
    positive_form,
    read_group,
    write_group,
)
from simflat.simfdb import classes_distinct, db_list, db_load, db_verify_all, recognize
from simflat.zorder import bravais_group
from utils.log import setup_logging

logger = logging.getLogger(__name__)

OK, NEGATIVE, NO_MATCH, FAILURE = 0, 1, 2, 3


def _group(path: str) -> MatrixGroup:
    return read_group(Path(path).read_text(), name=Path(path).stem)


def _matrix(path: str):
    return parse_matrix(Path(path).read_text())


def _forms(path: str) -> FormTuple:
    mats = parse_matrices(Path(path).read_text())
    if not mats:
        raise MalformedEntry(f"{path} holds no matrices")
    return FormTuple(mats[0], tuple(mats[1:]))


def cmd_order(args) -> int:
    print(_group(args.group).order)
    return OK


def cmd_formspace(args) -> int:
    space = fixed_forms(_group(args.group))
    print(f"symmetric {len(space.basis_sym)}")
    for F in space.basis_sym:
        print(format_matrix(F), end="")
    print(f"skew {len(space.basis_skew)}")
    for F in space.basis_skew:
        print(format_matrix(F), end="")
    return OK


def cmd_symplectic(args) -> int:
    answer = is_symplectic(_group(args.group))
    print("yes" if answer else "no")
    return OK if answer else NEGATIVE


def cmd_irreducible(args) -> int:
    answer = is_rationally_irreducible(_group(args.group))
    print("yes" if answer else "no")
    return OK if answer else NEGATIVE


def cmd_autgrp(args) -> int:
    L = Lattice.from_generators(_matrix(args.lattice))
    forms = [_matrix(p) for p in args.forms]
    A = aut_group(L, FormTuple(forms[0], tuple(forms[1:])))
    print(f"order {A.order}")
    print(write_group(A.group()), end="")
    return OK


def cmd_isometry(args) -> int:
    a, b = _forms(args.a), _forms(args.b)
    T = isometry(Lattice.standard(a.dim), a, Lattice.standard(b.dim), b)
    if T is None:
        print("none")
        return NEGATIVE
    print(format_matrix(T), end="")
    return OK


def cmd_lattices(args) -> int:
    G = _group(args.group)
    graph = lattice_classes(G, G.lattice(), positive_form(G))
    print(f"nodes {len(graph.nodes)} classes {graph.class_count}")
    for R in graph.class_reps:
        print(format_matrix(R.basis), end="")
    return OK


def cmd_bravais(args) -> int:
    G = _group(args.group)
    B = bravais_group(G, positive_form(G))
    print(f"order {B.order}")
    print(write_group(B), end="")
    return OK


def _construct(family: str, params: list[int]):
    builders = {
        "cyclic": (1, cyclic_group),
        "cpco": (1, cp_co),
        "qd": (1, qd_group),
        "T": (1, extraspecial_T),
        "extraspecial": (2, lambda p, n: extraspecial_p(p, n)[0]),
        "fermat": (2, fermat_group),
        "Q8": (0, quaternion_Q8),
        "GL23": (0, gl23_group),
    }
    if family == "wall":
        pair = wall_lattices(*params)
        return format_matrix(pair.L.basis) + format_matrix(pair.Lp.basis)
    if family == "h":
        return format_matrix(wall_h(*params))
    if family not in builders:
        raise SimflatError(f"unknown family {family!r}")
    arity, build = builders[family]
    if len(params) != arity:
        raise SimflatError(f"family {family!r} takes {arity} parameter(s)")
    return write_group(build(*params))


def cmd_construct(args) -> int:
    print(_construct(args.family, args.params), end="")
    return OK


def cmd_enumerate(args) -> int:
    results = simf_supergroups(_group(args.group), args.bound)
    print(f"classes {len(results)}")
    for i, A in enumerate(results):
        print(f"class {i} order {A.order}")
        print(write_group(A.group()), end="")
    return OK


def cmd_normalize(args) -> int:
    pair = IntegralPair(Lattice.from_generators(_matrix(args.lattice)), _matrix(args.form))
    q = normalize_pair(pair)
    print(f"det {q.det}")
    print(format_matrix(q.lattice.basis), end="")
    print(format_matrix(q.form), end="")
    return OK


def cmd_db_verify(args) -> int:
    entries = db_load(args.file)
    reports = db_verify_all(entries)
    for r in reports:
        status = "ok" if r.passed else "FAIL " + ",".join(r.failures())
        print(f"{r.dim} {r.order_claimed} {r.name}: {status}")
    clashes = classes_distinct(entries)
    for a, b in clashes:
        print(f"isometric entries: {a} {b}")
    return OK if all(r.passed for r in reports) and not clashes else NEGATIVE


def cmd_db_recognize(args) -> int:
    result = recognize(_group(args.group), db_load(args.db))
    print(result.name)
    print(format_matrix(result.conjugator), end="")
    return OK


def cmd_db_list(args) -> int:
    for row in db_list(db_load(args.file)):
        print(f"{row.dim} {row.order} {row.name} {'primitive' if row.primitive else 'imprimitive'}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simflat", description="Finite symplectic matrix groups")
    parser.add_argument("--log-level", default=None, help="overrides SIMFLAT_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_text in (
        ("order", cmd_order, "order of a finite group"),
        ("formspace", cmd_formspace, "invariant symmetric and skew forms"),
        ("symplectic", cmd_symplectic, "does the group fix a nondegenerate skew form"),
        ("irreducible", cmd_irreducible, "is the group rationally irreducible"),
        ("lattices", cmd_lattices, "invariant lattice classes"),
        ("bravais", cmd_bravais, "generalized Bravais group"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("group")
        p.set_defaults(func=func)

    p = sub.add_parser("autgrp", help="automorphism group of a lattice and forms")
    p.add_argument("lattice")
    p.add_argument("forms", nargs="+")
    p.set_defaults(func=cmd_autgrp)

    p = sub.add_parser("isometry", help="simultaneous isometry between two form tuples")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_isometry)

    p = sub.add_parser("construct", help="build a member of a named family")
    p.add_argument("family", choices=["cyclic", "cpco", "qd", "T", "extraspecial", "fermat",
                                      "Q8", "GL23", "wall", "h"])
    p.add_argument("params", nargs="*", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", help="s.i.m.f. supergroups with the same commuting field")
    p.add_argument("group")
    p.add_argument("--bound", type=int, default=None, help="bound on the group order")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("normalize", help="normalize an integral lattice/form pair")
    p.add_argument("lattice")
    p.add_argument("form")
    p.set_defaults(func=cmd_normalize)

    db = sub.add_parser("db", help="classification database").add_subparsers(dest="db_command", required=True)
    p = db.add_parser("verify")
    p.add_argument("file")
    p.set_defaults(func=cmd_db_verify)
    p = db.add_parser("recognize")
    p.add_argument("group")
    p.add_argument("db")
    p.set_defaults(func=cmd_db_recognize)
    p = db.add_parser("list")
    p.add_argument("file")
    p.set_defaults(func=cmd_db_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level or get_settings().log_level)
    try:
        return args.func(args)
    except NoMatch as e:
        print(f"no match: {e}", file=sys.stderr)
        return NO_MATCH
    except (SimflatError, OSError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
