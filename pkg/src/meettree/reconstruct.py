"""Gluing a pair of coordinate types into the pair's type over the full base.

Inputs: the types of two tuples taken separately over a meet-closed base,
plus the type of the combined tuple over a small anchor base (the meet
closure of the anchors collected by `meet_witness`). Output: the type of
the combined tuple over the full base, computed from the three tables
alone. The procedure materializes one finite tree holding the base and
every combined term value, then reads the answer off that tree:

1. The base tree is rebuilt from the parameter entries of the first input;
   the second input must agree with it.
2. Every term class of the small-base type resolves to a base point or to
   a fresh point with a derived order row over the base. Rows come from
   the richest source present in the class: any one-sided term (variables
   of one side, possibly with a parameter) carries that side's full row;
   a class generated only by cross pairs (v, w) is placed by its cut,
   the intersection of the two coordinate cuts. Incomparable coordinate
   cuts force the cross meet to be a base point (the deepest point of the
   intersection); comparable cuts leave a fresh point incomparable with
   everything outside its cut, which is sound because an anchor tuple for
   the pair would otherwise contain a base point above the fresh point,
   and then the class would carry a one-sided term.
3. A relation fact between a fresh point e and a base point f outside the
   anchor base transfers along cones: when meet(e, f) lies strictly above
   the cut of e, the fact equals the recorded fact between e and an anchor
   in f's cone; when some base point h shares e's cone above meet(e, f),
   it equals the parameter fact for (h, f); otherwise a coordinate shares
   that cone and the fact comes from its one-sided row.
4. The result is verified by restriction: it must reproduce all three
   inputs exactly, else the inputs admit no common extension.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement

from .errors import InconsistentInputs, MissingAnchor
from .formulas import is_var
from .qftype import QfType, check_qftype, qf_type_of, restrict, var_name
from .tree import EQ, GT, INCOMPARABLE, LT, MeetTree, compare, meet

__all__ = ["reconstruct_pair_type"]

_INV = {LT: GT, GT: LT, EQ: EQ, INCOMPARABLE: INCOMPARABLE}


def _sing(tp: QfType, name: str) -> int:
    return tp.index_of(frozenset([name]))


def _param_terms(base):
    return [frozenset([m]) for m in base] + [frozenset(p) for p in combinations(base, 2)]


def _check_inputs(tpA, tpB, tpAB_c):
    for tp in (tpA, tpB, tpAB_c):
        bad = check_qftype(tp)
        if bad is not None:
            raise ValueError(f"malformed input type: {bad}")
    if tpA.base != tpB.base:
        raise InconsistentInputs("coordinate types are over different bases")
    if not set(tpAB_c.base) <= set(tpA.base):
        raise InconsistentInputs("anchor base is not contained in the full base")
    if tpAB_c.var_count != tpA.var_count + tpB.var_count:
        raise InconsistentInputs("variable counts do not add up")
    if not (tpA.symbols() == tpB.symbols() == tpAB_c.symbols()):
        raise InconsistentInputs("inputs disagree on relation symbols")
    pterms = _param_terms(tpA.base)
    ia = [tpA.index_of(t) for t in pterms]
    ib = [tpB.index_of(t) for t in pterms]
    for x in range(len(pterms)):
        for y in range(len(pterms)):
            if tpA.rel_at(ia[x], ia[y]) != tpB.rel_at(ib[x], ib[y]):
                raise InconsistentInputs("parameter order differs between coordinate types")
            for sym in tpA.symbols():
                if tpA.fact_at(sym, ia[x], ia[y]) != tpB.fact_at(sym, ib[x], ib[y]):
                    raise InconsistentInputs("parameter facts differ between coordinate types")


def _base_tree(tp: QfType) -> MeetTree:
    """Rebuild the parameter tree from a type's parameter entries."""
    base = tp.base
    idx = {m: _sing(tp, m) for m in base}

    def lt(a, b):
        return tp.rel_at(idx[a], idx[b]) == LT

    parent = {}
    for m in base:
        lows = [q for q in base if lt(q, m)]
        pick = None
        for cand in lows:
            if all(q == cand or lt(q, cand) for q in lows):
                pick = cand
        parent[m] = pick  # None doubles as "root"; garbage surfaces in validate
    t = MeetTree(base, parent)
    bad = t.validate()
    if bad is not None:
        raise InconsistentInputs(f"parameter entries are not tree-shaped: {bad}")
    for m1, m2 in combinations(base, 2):
        k = tp.meet_index(idx[m1], idx[m2])
        if tp.realizes(k) != meet(t, m1, m2):
            raise InconsistentInputs("parameter meets do not match the parameter order")
    return t


def reconstruct_pair_type(tpA: QfType, tpB: QfType, tpAB_c: QfType) -> QfType:
    """The unique type over the full base extending tpA, tpB and tpAB_c.

    tpA and tpB are the two coordinate tuples' types over one meet-closed
    base; tpAB_c is the combined tuple's type over the meet closure of a
    witness anchor tuple for it. Never consults any ambient structure.
    Raises InconsistentInputs when no single extension realizes all three
    inputs, MissingAnchor when the small base lacks the anchor points the
    placement rules rely on.
    """
    _check_inputs(tpA, tpB, tpAB_c)
    base = tpA.base
    bset = set(base)
    mt = _base_tree(tpA)
    n0, n1 = tpA.var_count, tpB.var_count
    n = n0 + n1
    cbase = tpAB_c.base
    cset = set(cbase)
    for a1, a2 in combinations(cbase, 2):
        if meet(mt, a1, a2) not in cset:
            raise InconsistentInputs("anchor base is not meet-closed")

    def var_side(g):
        i = int(g[1:])
        return (tpA, var_name(i)) if i < n0 else (tpB, var_name(i - n0))

    def var_real(g):
        tp_side, ln = var_side(g)
        return tp_side.realizes(_sing(tp_side, ln))

    def row_of(tp_side, ti):
        # entry[m] is the relation of the term's value to m
        return {m: tp_side.rel_at(ti, _sing(tp_side, m)) for m in base}

    def var_cut(g):
        tp_side, ln = var_side(g)
        return tp_side.cut_of(_sing(tp_side, ln))

    # -- resolve every term class of the small-base type -------------------

    creps = tpAB_c.class_reps()
    members = {k: [] for k in creps}
    for ti, term in enumerate(tpAB_c.terms):
        members[tpAB_c.class_rep(ti)].append(term)

    resolved = {}  # rep -> (value | None, row | None)
    for k in creps:
        values, rows, cross_cuts = [], [], []
        for term in members[k]:
            gens = sorted(term)
            if len(gens) == 1:
                g = gens[0]
                if not is_var(g):
                    values.append(g)
                    continue
                tp_side, ln = var_side(g)
                si = _sing(tp_side, ln)
                m = tp_side.realizes(si)
                values.append(m) if m is not None else rows.append(row_of(tp_side, si))
                continue
            # pair term: realized variable generators act as base points
            pts, free = [], []
            for g in gens:
                if not is_var(g):
                    pts.append(g)
                    continue
                m = var_real(g)
                pts.append(m) if m is not None else free.append(g)
            if not free:
                values.append(meet(mt, pts[0], pts[1]))
            elif len(free) == 1:
                tp_side, ln = var_side(free[0])
                ti = tp_side.index_of(frozenset([ln, pts[0]]))
                m = tp_side.realizes(ti)
                values.append(m) if m is not None else rows.append(row_of(tp_side, ti))
            else:
                sa, la = var_side(free[0])
                sb, lb = var_side(free[1])
                if sa is sb:
                    ti = sa.index_of(frozenset([la, lb]))
                    m = sa.realizes(ti)
                    values.append(m) if m is not None else rows.append(row_of(sa, ti))
                    continue
                cv, cw = var_cut(free[0]), var_cut(free[1])
                if not (cv <= cw or cw <= cv):
                    # each cut has a point the other lacks; those two base
                    # points meet exactly at the cross meet, so it is a
                    # base point: the deepest point under both coordinates
                    values.append(max(cv & cw, key=mt.depth_of))
                else:
                    cross_cuts.append(cv & cw)

        value = None
        for v in values:
            if value is None:
                value = v
            elif value != v:
                raise InconsistentInputs(
                    f"a term class resolves to both {value!r} and {v!r}"
                )
        if value is not None:
            if rows:
                # a one-sided row without a realization contradicts a
                # realized value for the same class
                raise InconsistentInputs("a term class is both realized and new")
            for cut in cross_cuts:
                if value not in cut or value != max(cut, key=mt.depth_of):
                    raise InconsistentInputs("a realized cross meet sits off its cut")
            resolved[k] = (value, None)
            continue
        if rows:
            for other in rows[1:]:
                if other != rows[0]:
                    raise InconsistentInputs("one-sided rows disagree inside a term class")
            resolved[k] = (None, rows[0])
            continue
        # cross pairs only: the placement leans on the anchor guarantees,
        # so insist the anchor base can actually hold an anchor for it
        cut = cross_cuts[0]
        for other in cross_cuts[1:]:
            if other != cut:
                raise InconsistentInputs("cross pairs disagree on a class cut")
        if not any(all(compare(mt, m, a) == LT for m in cut) for a in cbase):
            raise MissingAnchor(
                "no anchor point lies above the cut of a cross meet"
            )
        resolved[k] = (None, {m: GT if m in cut else INCOMPARABLE for m in base})

    # derived placements must agree with the small-base tables
    cidx = {a: _sing(tpAB_c, a) for a in cbase}
    for k in creps:
        value, row = resolved[k]
        for a in cbase:
            got = compare(mt, value, a) if value is not None else row[a]
            if got != tpAB_c.rel_at(k, cidx[a]):
                raise InconsistentInputs("a placement contradicts the small-base type")

    # -- materialize one tree over base plus the fresh classes -------------

    taken = set(base)
    node_of, rep_of = {}, {}
    for k in creps:
        value, _ = resolved[k]
        if value is not None:
            node_of[k] = value
            continue
        name = f"+{k}"
        while name in taken:
            name = "+" + name
        taken.add(name)
        node_of[k] = name
        rep_of[name] = k

    def rel_nodes(p, q):
        kp, kq = rep_of.get(p), rep_of.get(q)
        if kp is None and kq is None:
            return compare(mt, p, q)
        if kp is not None and kq is not None:
            return tpAB_c.rel_at(kp, kq)
        if kp is not None:
            return resolved[kp][1][q]
        return _INV[resolved[kq][1][p]]

    pts = list(base) + sorted(rep_of)
    parent = {}
    for p in pts:
        lows = [q for q in pts if q != p and rel_nodes(q, p) == LT]
        if not lows:
            parent[p] = None
            continue
        pick = None
        for cand in lows:
            if all(q == cand or rel_nodes(q, cand) == LT for q in lows):
                pick = cand
        if pick is None:
            raise InconsistentInputs("lower bounds of a point are not a chain")
        parent[p] = pick
    roots = sorted(p for p in pts if parent[p] is None)
    ground = None
    if len(roots) > 1:
        # mutually incomparable minima: their meets sit strictly below
        # every materialized point, where no term value can land
        ground = "+"
        while ground in taken:
            ground = "+" + ground
        pts.append(ground)
        for r in roots:
            parent[r] = ground
        parent[ground] = None
    glue = MeetTree(pts, parent)
    bad = glue.validate()
    if bad is not None:
        raise InconsistentInputs(f"placements do not form a tree: {bad}")
    real = [p for p in pts if p != ground]
    for x in range(len(real)):
        for y in range(x + 1, len(real)):
            if compare(glue, real[x], real[y]) != rel_nodes(real[x], real[y]):
                raise InconsistentInputs("pairwise order is not realizable in one tree")
    for j, k in combinations_with_replacement(creps, 2):
        want = node_of[tpAB_c.meet_index(j, k)]
        if meet(glue, node_of[j], node_of[k]) != want:
            raise InconsistentInputs("class meets are not realizable in one tree")

    bvals = tuple(
        node_of[tpAB_c.class_rep(_sing(tpAB_c, var_name(i)))] for i in range(n)
    )

    # -- relation facts -----------------------------------------------------

    def param_fact(sym, u, w):
        return tpA.fact_at(sym, _sing(tpA, u), _sing(tpA, w))

    def transfer(sym, k, en, f, e_first):
        """Fact between fresh point en (class k) and base point f not in
        the anchor base, following the cone the two share."""
        y = meet(glue, en, f)
        if y not in bset:
            # the shared cone sits strictly above the cut of en: any
            # anchor in f's cone above the meet carries the same fact
            for a in cbase:
                if (
                    compare(glue, meet(mt, a, f), y) == GT
                    and tpAB_c.rel_at(k, cidx[a]) == INCOMPARABLE
                ):
                    i, j = (k, cidx[a]) if e_first else (cidx[a], k)
                    return tpAB_c.fact_at(sym, i, j)
            raise MissingAnchor(
                "no anchor point shares a cone with a fresh point"
            )
        hs = [h for h in base if h != y and compare(glue, meet(glue, en, h), y) == GT]
        if hs:
            h = min(hs)
            return param_fact(sym, h, f) if e_first else param_fact(sym, f, h)
        for i in range(n):
            if compare(glue, meet(glue, en, bvals[i]), y) == GT:
                tp_side, ln = var_side(var_name(i))
                ti, fi = _sing(tp_side, ln), _sing(tp_side, f)
                return (
                    tp_side.fact_at(sym, ti, fi)
                    if e_first
                    else tp_side.fact_at(sym, fi, ti)
                )
        raise InconsistentInputs("a fresh point shares no cone with any coordinate")

    def holds(sym, u, v):
        if compare(glue, u, v) != INCOMPARABLE:
            return False
        ku, kv = rep_of.get(u), rep_of.get(v)
        if ku is None and kv is None:
            return param_fact(sym, u, v)
        if ku is not None and kv is not None:
            return tpAB_c.fact_at(sym, ku, kv)
        if ku is not None:
            if v in cset:
                return tpAB_c.fact_at(sym, ku, cidx[v])
            return transfer(sym, ku, u, v, True)
        if u in cset:
            return tpAB_c.fact_at(sym, cidx[u], kv)
        return transfer(sym, kv, v, u, False)

    struct = _Glued(glue, tpA.symbols(), holds)
    out = qf_type_of(struct, base, bvals)
    if restrict(out, range(n0)) != tpA:
        raise InconsistentInputs("no common extension reproduces the first input")
    if restrict(out, range(n0, n)) != tpB:
        raise InconsistentInputs("no common extension reproduces the second input")
    if qf_type_of(struct, cbase, bvals) != tpAB_c:
        raise InconsistentInputs("no common extension reproduces the small-base type")
    return out


class _Glued:
    __slots__ = ("tree", "_syms", "_fn")

    def __init__(self, tree, syms, fn):
        self.tree = tree
        self._syms = syms
        self._fn = fn

    def symbols(self):
        return self._syms

    def holds(self, sym, a, b):
        return self._fn(sym, a, b)
