"""Brute-force enumeration of the qf types a tuple can take over a base.

The base is a whole structure (meet-tree or cone-expansion); its nodes
are the parameters. The enumerator grows finite extensions variable by
variable: each variable lands on an existing point, strictly inside an
edge, below the root, or in a new cone over any of these, so one step
adds at most two points and still reaches every position the variable
can have relative to what is already present. Trees stay meet-closed
throughout, and a type is only ever produced at its minimal new-point
cost, so the budget prunes exactly.

Comparison constraints prune a branch as soon as all their variables
are placed. Relation facts are decided per cone pair: pairs whose cones
are both represented in the base inherit the base's facts; facts on new
cones are branched over both truth values at the leaves (one shared bit
per cone pair), which is the genericity of the expansion.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, List, Sequence

from .errors import BudgetExceeded
from .formulas import Cmp, Rel, is_var
from .qftype import QfType, qf_type_of, structure_symbols, structure_tree
from .tree import (
    EQ,
    GT,
    INCOMPARABLE,
    LT,
    AddNewCone,
    MeetTree,
    compare,
    cone_child,
    extend,
    is_le,
    meet,
    one_point_moves,
)


def _var_index(g: str) -> int:
    return int(g[1:] or 0)


def _term_value(t: MeetTree, gens: frozenset, pos: Sequence[str]) -> str:
    pt = None
    for g in sorted(gens):
        node = pos[_var_index(g)] if is_var(g) else g
        pt = node if pt is None else meet(t, pt, node)
    return pt


def _cmp_holds(t: MeetTree, atom: Cmp, pos) -> bool:
    r = compare(t, _term_value(t, atom.lhs.gens, pos), _term_value(t, atom.rhs.gens, pos))
    ok = {"=": (EQ,), "<": (LT,), "<=": (LT, EQ), ">": (GT,), ">=": (GT, EQ)}
    return r in ok[atom.op]


def _threshold(atom) -> int:
    """Highest variable index the atom mentions, -1 for parameter-only."""
    idx = [-1]
    for tm in (atom.lhs, atom.rhs):
        idx.extend(_var_index(g) for g in tm.gens if is_var(g))
    return max(idx)


class _Decorated:
    """A working tree plus chosen fact bits, shaped like an expansion."""

    __slots__ = ("tree", "_syms", "_fn")

    def __init__(self, tree, syms, fn):
        self.tree = tree
        self._syms = syms
        self._fn = fn

    def symbols(self):
        return self._syms

    def holds(self, sym, a, b):
        return self._fn(sym, a, b)


def _cone_rep(t, base_set, g, cone):
    """Least base point inside the open cone (the cone of `cone` above g)."""
    for m in sorted(base_set):
        if m != g and is_le(t, g, m) and cone_child(t, g, m) == cone:
            return m
    return None


def _fact_key(t, is_sym, sym, u, v):
    g = meet(t, u, v)
    cu, cv = cone_child(t, g, u), cone_child(t, g, v)
    if is_sym(sym) and cv < cu:
        cu, cv = cv, cu
    return (sym, g, cu, cv)


def enumerate_extensions(
    M, var_count: int, constraints: Iterable = (), budget=None
) -> List[QfType]:
    """All qf types of a var_count-tuple over all of M, realizable in some
    extension of M with at most `budget` new points, consistent with the
    constraint atoms; sorted canonically."""
    t0 = structure_tree(M)
    base = tuple(sorted(t0.nodes))
    if not base:
        raise ValueError("empty base")
    for m in base:
        if is_var(m):
            raise ValueError(f"base node {m!r} shadows a variable name")
    syms = tuple(sorted(structure_symbols(M)))
    sig = getattr(M, "signature", None)
    is_sym = sig.is_symmetric if sig is not None else (lambda s: False)

    atoms = tuple(constraints)
    var_terms = set()
    for a in atoms:
        if not isinstance(a, (Cmp, Rel)):
            raise TypeError(f"not a constraint atom: {a!r}")
        if isinstance(a, Rel) and a.name not in syms:
            raise ValueError(f"unknown relation {a.name!r}")
        for tm in (a.lhs, a.rhs):
            gens_vars = [g for g in tm.gens if is_var(g)]
            for g in gens_vars:
                if _var_index(g) >= var_count:
                    raise ValueError(f"variable {g!r} outside tuple of {var_count}")
            for g in tm.gens:
                if not is_var(g):
                    t0.index(g)
            if gens_vars:
                var_terms.add(tm.gens)
    # each variable contributes at most two points to the definable
    # closure, so that caps how many the mentioned terms can require
    needed = min(len(var_terms), 2 * var_count)
    if budget is None:
        budget = needed + 1
    if budget < needed:
        raise BudgetExceeded(needed, budget)

    cmp_by_step = {i: [] for i in range(-1, var_count)}
    rel_atoms = []
    for a in atoms:
        if isinstance(a, Cmp):
            cmp_by_step[_threshold(a)].append(a)
        else:
            rel_atoms.append(a)
    if not all(_cmp_holds(t0, a, ()) for a in cmp_by_step[-1]):
        return []

    out = set()
    fresh = iter(range(10**9))

    def place(t, room):
        moves = [(t, None, 0)]
        if room >= 1:
            x = f"+{next(fresh)}"
            for mv in one_point_moves(t, x):
                moves.append((extend(t, mv), x, 1))
        if room >= 2:
            w = f"+{next(fresh)}"
            x = f"+{next(fresh)}"
            for mv in one_point_moves(t, w):
                t1 = extend(t, mv)
                moves.append((extend(t1, AddNewCone(w, x)), x, 2))
        return moves

    def leaf(t, pos):
        if not syms:
            out.add(qf_type_of(t, base, pos))
            return
        vals = set(pos) | set(base)
        # every term value is a pairwise meet of these
        vals = sorted({meet(t, u, v) for u in vals for v in vals} | vals)
        reps = {}
        for u in vals:
            for v in vals:
                if compare(t, u, v) != INCOMPARABLE:
                    continue
                for sym in syms:
                    key = _fact_key(t, is_sym, sym, u, v)
                    if key in reps:
                        continue
                    _, g, cu, cv = key
                    m1 = _cone_rep(t, base, g, cu)
                    m2 = _cone_rep(t, base, g, cv)
                    reps[key] = None if m1 is None or m2 is None else M.holds(sym, m1, m2)
        forced = {}
        for a in rel_atoms:
            u = _term_value(t, a.lhs.gens, pos)
            v = _term_value(t, a.rhs.gens, pos)
            if compare(t, u, v) != INCOMPARABLE:
                if a.holds:
                    return
                continue
            key = _fact_key(t, is_sym, a.name, u, v)
            known = reps.get(key)
            if known is not None:
                if known != a.holds:
                    return
                continue
            if forced.setdefault(key, a.holds) != a.holds:
                return
        free = sorted(k for k, v in reps.items() if v is None and k not in forced)

        def decide(bits):
            def fn(sym, u, v):
                if compare(t, u, v) != INCOMPARABLE:
                    return False
                key = _fact_key(t, is_sym, sym, u, v)
                known = reps.get(key)
                if known is not None:
                    return known
                return bits[key]

            out.add(qf_type_of(_Decorated(t, syms, fn), base, pos))

        for combo in product((False, True), repeat=len(free)):
            bits = dict(zip(free, combo))
            bits.update(forced)
            decide(bits)

    def search(t, pos, room):
        i = len(pos)
        if i == var_count:
            leaf(t, pos)
            return
        for t2, x, added in place(t, min(2, room)):
            if x is None:
                for node in sorted(t.nodes):
                    pos.append(node)
                    if all(_cmp_holds(t2, a, pos) for a in cmp_by_step[i]):
                        search(t2, pos, room)
                    pos.pop()
            else:
                pos.append(x)
                if all(_cmp_holds(t2, a, pos) for a in cmp_by_step[i]):
                    search(t2, pos, room - added)
                pos.pop()

    search(t0, [], budget)
    return sorted(out, key=lambda tp: (tp.rel, tp.facts))


def entails(M, pi: Iterable, target: QfType, budget=None) -> bool:
    """True iff every enumerated completion of pi over M equals target."""
    t0 = structure_tree(M)
    if target.base != tuple(sorted(t0.nodes)):
        raise ValueError("target type is not over this base")
    found = enumerate_extensions(M, target.var_count, pi, budget)
    return all(tp == target for tp in found)
