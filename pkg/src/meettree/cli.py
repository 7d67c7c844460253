"""Command-line front end.

One subcommand per library operation; file arguments use the JSON
interchange format. Exit codes: 0 for success or a positive verdict, 1
for a negative verdict (an invalid tree, a failed check, a false
comparison), 2 for unusable input. Output is deterministic: same argv,
same files, same seed, same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dommonoid import (
    class_of_tuple,
    leq,
    monoid_from_json,
    monoid_to_json,
    mul,
    render_element,
    wort,
)
from .enumerate_ext import entails, enumerate_extensions
from .errors import BudgetExceeded, CutUncovered, InvalidTreeError, MeetTreeError
from .expansion import DTR, decorate_random, induced_structure
from .formulas import parse_constraints
from .qftype import qf_type_of, qftype_to_json, structure_tree, type_constraints
from .reconstruct import reconstruct_pair_type
from .serialize import structure_from_json, structure_to_json, to_dot
from .symtype import ExistingCone, classify_point, symtype_to_json
from .tree import amalgamate, meet, meet_closure, random_tree
from .witness import meet_witness


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return structure_from_json(json.load(fh))


def _csv(text: str) -> tuple:
    return tuple(x for x in text.split(",") if x) if text else ()


def _base_of(args, s) -> tuple:
    if getattr(args, "base", None) is not None:
        return _csv(args.base)
    return tuple(sorted(structure_tree(s).base))


def _out(args, data, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _emit_doc(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _cmd_validate(args) -> int:
    try:
        _load(args.file)
    except InvalidTreeError as exc:
        _out(args, {"ok": False, "violation": str(exc)}, str(exc))
        return 1
    _out(args, {"ok": True}, "ok")
    return 0


def _cmd_gen(args) -> int:
    t = random_tree(args.n, args.seed)
    s = t if args.density is None else decorate_random(t, DTR, args.density, args.seed)
    _emit_doc(structure_to_json(s))
    return 0


def _cmd_meet(args) -> int:
    t = structure_tree(_load(args.file))
    print(meet(t, args.a, args.b))
    return 0


def _cmd_closure(args) -> int:
    t = structure_tree(_load(args.file))
    closed = sorted(meet_closure(t, args.nodes))
    _out(args, closed, "\n".join(closed))
    return 0


def _cmd_qftype(args) -> int:
    s = _load(args.file)
    tp = qf_type_of(s, _base_of(args, s), _csv(args.tuple))
    print(json.dumps(qftype_to_json(tp), sort_keys=True))
    return 0


def _cmd_witness(args) -> int:
    s = _load(args.file)
    w = meet_witness(s, _base_of(args, s), _csv(args.tuple))
    data = {
        "d": list(w.d),
        "c": list(w.c),
        "anchors": dict(sorted(w.a_map.items())),
    }
    text = "d: {}\nc: {}\nanchors: {}".format(
        ",".join(w.d) or "-",
        ",".join(w.c) or "-",
        " ".join(f"{e}->{a}" for e, a in sorted(w.a_map.items())) or "-",
    )
    _out(args, data, text)
    return 0


def _cmd_wb_check(args) -> int:
    s = _load(args.file)
    t = structure_tree(s)
    M = _base_of(args, s)
    b0, b1 = _csv(args.tuple1), _csv(args.tuple2)
    w = meet_witness(s, M, b0 + b1)
    cb = tuple(sorted(meet_closure(t, w.c)))
    tpA = qf_type_of(s, M, b0)
    tpB = qf_type_of(s, M, b1)
    tpc = qf_type_of(s, cb, b0 + b1)
    got = reconstruct_pair_type(tpA, tpB, tpc)
    want = qf_type_of(s, M, b0 + b1)
    agree = got == want
    oracle = None
    if args.oracle:
        pi = (
            type_constraints(tpA, 0)
            + type_constraints(tpB, tpA.var_count)
            + type_constraints(tpc, 0)
        )
        oracle = entails(induced_structure(s, M), pi, got, budget=args.budget)
        agree = agree and oracle
    data = {"agree": agree, "type": qftype_to_json(got)}
    if oracle is not None:
        data["oracle"] = oracle
    _out(args, data, "AGREE" if agree else "DISAGREE")
    return 0 if agree else 1


def _cmd_enumerate(args) -> int:
    s = _load(args.file)
    if args.base is not None:
        s = induced_structure(s, _csv(args.base))
    pi = parse_constraints(args.constraints)
    found = enumerate_extensions(s, args.vars, pi, budget=args.budget)
    data = {"count": len(found), "types": [qftype_to_json(tp) for tp in found]}
    lines = [str(len(found))] + [
        json.dumps(qftype_to_json(tp), sort_keys=True) for tp in found
    ]
    _out(args, data, "\n".join(lines))
    return 0


def _cmd_tame(args) -> int:
    from .tameness import tame_report

    s = _load(args.file)
    report = tame_report(s, args.formula, _csv(args.witness) if args.witness is not None else None)
    ok = report["counterexample"] is None
    text = (
        "witness: {}".format(",".join(report["witness"]) or "-")
        if ok
        else "counterexample: {}".format(report["counterexample"]["point"])
    )
    _out(args, report, text)
    return 0 if ok else 1


def _cmd_classify(args) -> int:
    s = _load(args.file)
    p = classify_point(s, _base_of(args, s), args.point)
    if isinstance(p.cone, ExistingCone):
        suffix = f" in cone {p.cone.id}"
    elif p.cone is not None:
        suffix = " in a new cone"
    else:
        suffix = ""
    _out(args, symtype_to_json(p), f"{p.kind} over {p.cut.id}{suffix}")
    return 0


def _load_element(path: str):
    with open(path, encoding="utf-8") as fh:
        return monoid_from_json(json.load(fh))


def _cmd_monoid(args) -> int:
    if args.action == "class":
        s = _load(args.file)
        u = class_of_tuple(s, _base_of(args, s), _csv(args.tuple))
        _out(args, monoid_to_json(u), render_element(u))
        return 0
    u = _load_element(args.left)
    v = _load_element(args.right)
    if args.action == "mul":
        w = mul(u, v)
        _out(args, monoid_to_json(w), render_element(w))
        return 0
    verdict = leq(u, v) if args.action == "leq" else wort(u, v)
    _out(args, {"verdict": verdict}, "true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_amalgamate(args) -> int:
    A = structure_tree(_load(args.over))
    B = structure_tree(_load(args.left))
    C = structure_tree(_load(args.right))
    ident = {a: a for a in sorted(A.nodes)}
    D, f_bd, f_cd = amalgamate(A, B, C, ident, ident)
    doc = structure_to_json(D)
    if args.json:
        print(
            json.dumps(
                {"tree": doc, "from_left": dict(sorted(f_bd.items())),
                 "from_right": dict(sorted(f_cd.items()))},
                sort_keys=True,
            )
        )
    else:
        _emit_doc(doc)
    return 0


def _cmd_export(args) -> int:
    s = _load(args.file)
    text = to_dot(s) if args.dot else json.dumps(
        structure_to_json(s), indent=2, sort_keys=True
    ) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meettree",
        description="Finite meet-trees: validation, types, witnesses, classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=fn)
        return p

    p = add("validate", _cmd_validate, help="check a structure file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = add("gen", _cmd_gen, help="generate a random tree")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--density", type=float, default=None,
                   help="decorate with a symmetric relation at this density")

    p = add("meet", _cmd_meet, help="meet of two nodes")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")

    p = add("closure", _cmd_closure, help="meet closure of a node set")
    p.add_argument("file")
    p.add_argument("nodes", nargs="+")
    p.add_argument("--json", action="store_true")

    p = add("qftype", _cmd_qftype, help="quantifier-free type of a tuple")
    p.add_argument("file")
    p.add_argument("--base", default=None, help="comma-separated; file base if omitted")
    p.add_argument("--tuple", required=True, help="comma-separated")

    p = add("witness", _cmd_witness, help="meet witness of a tuple over a base")
    p.add_argument("file")
    p.add_argument("--base", default=None)
    p.add_argument("--tuple", required=True)
    p.add_argument("--json", action="store_true")

    p = add("wb-check", _cmd_wb_check,
            help="reconstruct a pair type from its halves and compare")
    p.add_argument("--file", required=True)
    p.add_argument("--base", default=None)
    p.add_argument("--tuple1", required=True)
    p.add_argument("--tuple2", required=True)
    p.add_argument("--oracle", action="store_true",
                   help="also confirm uniqueness by enumeration")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = add("enumerate", _cmd_enumerate, help="enumerate extension types")
    p.add_argument("file")
    p.add_argument("--base", default=None)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--constraints", default="")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = add("tame", _cmd_tame, help="find or check a tameness witness set")
    p.add_argument("file")
    p.add_argument("--formula", required=True)
    p.add_argument("--witness", default=None, help="check this set instead of searching")
    p.add_argument("--json", action="store_true")

    p = add("classify", _cmd_classify, help="symbolic 1-type of a point")
    p.add_argument("file")
    p.add_argument("point")
    p.add_argument("--base", default=None)
    p.add_argument("--json", action="store_true")

    p = add("monoid", _cmd_monoid, help="domination classes and their arithmetic")
    msub = p.add_subparsers(dest="action", required=True)
    pc = msub.add_parser("class", help="decompose a tuple over a base")
    pc.set_defaults(func=_cmd_monoid)
    pc.add_argument("file")
    pc.add_argument("--base", default=None)
    pc.add_argument("--tuple", required=True)
    pc.add_argument("--json", action="store_true")
    for action, blurb in (
        ("mul", "product of two element files"),
        ("leq", "does the right element dominate the left"),
        ("wort", "are two elements weakly orthogonal"),
    ):
        pa = msub.add_parser(action, help=blurb)
        pa.set_defaults(func=_cmd_monoid)
        pa.add_argument("left")
        pa.add_argument("right")
        pa.add_argument("--json", action="store_true")

    p = add("amalgamate", _cmd_amalgamate,
            help="free amalgam of two trees over a shared one")
    p.add_argument("over")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--json", action="store_true")

    p = add("export", _cmd_export, help="re-emit a structure as JSON or DOT")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.add_argument("-o", "--output", default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CutUncovered, BudgetExceeded) as exc:
        kind = "cut-uncovered" if isinstance(exc, CutUncovered) else "budget-exceeded"
        if getattr(args, "json", False):
            print(json.dumps({"error": kind, "detail": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MeetTreeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
