"""Canonical quantifier-free types of tuples over a parameter set.

A QfType is the atomic diagram of a tuple over a meet-closed base,
computed on the meet-closure of base and tuple. Terms are normalized to
generator sets; the table lists every singleton and every two-element
subset of the generators, which covers every closure element because in
a meet-tree any iterated meet collapses to a pairwise one. Structural
equality of QfType values is type equality.

Structures are duck-typed: a plain MeetTree is a pure-tree structure;
anything with a `tree` attribute plus `symbols()`/`holds(sym, a, b)` is
treated as an expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NonMeetClosedError
from .formulas import Cmp, Meet, Rel, gen_sort_key, is_var
from .tree import EQ, GT, INCOMPARABLE, LT, compare, meet

_INV = {LT: GT, GT: LT, EQ: EQ, INCOMPARABLE: INCOMPARABLE}


def var_name(i: int) -> str:
    return f"x{i}"


def structure_tree(N):
    return getattr(N, "tree", N)


def structure_symbols(N) -> tuple:
    get = getattr(N, "symbols", None)
    return tuple(get()) if get is not None else ()


def term_key(term: frozenset):
    return tuple(sorted(gen_sort_key(g) for g in term))


def make_terms(var_count: int, base: Sequence[str]) -> tuple:
    gens = [var_name(i) for i in range(var_count)] + list(base)
    terms = [frozenset([g]) for g in gens]
    terms += [frozenset(p) for p in combinations(gens, 2)]
    return tuple(sorted(terms, key=term_key))


@dataclass(frozen=True)
class QfType:
    base: tuple  # sorted parameter node ids
    var_count: int
    terms: tuple  # canonical term table: tuple of frozensets of generators
    rel: tuple  # n*n row-major entries in {LT, GT, EQ, INCOMPARABLE}
    facts: tuple = ()  # ((symbol, n*n bools), ...) sorted by symbol; () in pure mode

    def __post_init__(self):
        n = len(self.terms)
        if len(self.rel) != n * n:
            raise ValueError("relation table size mismatch")
        for _, table in self.facts:
            if len(table) != n * n:
                raise ValueError("fact table size mismatch")

    @property
    def n(self) -> int:
        return len(self.terms)

    def rel_at(self, i: int, j: int) -> str:
        return self.rel[i * self.n + j]

    def fact_at(self, sym: str, i: int, j: int) -> bool:
        for name, table in self.facts:
            if name == sym:
                return table[i * self.n + j]
        raise KeyError(sym)

    def symbols(self) -> tuple:
        return tuple(name for name, _ in self.facts)

    def index_of(self, term: frozenset) -> int:
        try:
            return self.terms.index(term)
        except ValueError:
            raise KeyError(f"term not in table: {sorted(term)}") from None

    # -- class algebra: everything below reads only the tables -------------

    def le(self, i: int, j: int) -> bool:
        return self.rel_at(i, j) in (LT, EQ)

    def class_rep(self, i: int) -> int:
        for j in range(self.n):
            if self.rel_at(i, j) == EQ:
                return j  # first EQ hit is the least index in the class
        raise AssertionError("missing reflexive EQ")

    def class_reps(self) -> tuple:
        return tuple(sorted({self.class_rep(i) for i in range(self.n)}))

    def meet_index(self, i: int, j: int) -> int:
        """Index of the term class that is the meet of classes i and j."""
        lows = [k for k in range(self.n) if self.le(k, i) and self.le(k, j)]
        for k in lows:
            if all(self.le(x, k) for x in lows):
                return self.class_rep(k)
        raise ValueError("relation table has no meet for a term pair")

    def cut_of(self, i: int) -> frozenset:
        """Base points lying at-or-below class i."""
        out = []
        for p in self.base:
            j = self.index_of(frozenset([p]))
            if self.le(j, i):
                out.append(p)
        return frozenset(out)

    def realizes(self, i: int):
        """The base point class i is EQ to, or None."""
        for p in self.base:
            if self.rel_at(i, self.index_of(frozenset([p]))) == EQ:
                return p
        return None


def check_qftype(tp: QfType):
    """Return a violation description, or None if tp is internally coherent."""
    n = tp.n
    if tp.terms != make_terms(tp.var_count, tp.base):
        return "term table is not canonical"
    if tuple(sorted(tp.base)) != tp.base:
        return "base not sorted"
    rows = [tp.rel[i * n:(i + 1) * n] for i in range(n)]
    for i in range(n):
        if rows[i][i] != EQ:
            return "diagonal not EQ"
        for j in range(n):
            if rows[j][i] != _INV[rows[i][j]]:
                return "rel not inverse-symmetric"
    for i in range(n):
        for j in range(n):
            if rows[i][j] == EQ and rows[i] != rows[j]:
                return "EQ classes not congruent"
    rep = [rows[i].index(EQ) for i in range(n)]
    reps = sorted(set(rep))
    below = {k: frozenset(j for j in reps if rows[j][k] in (LT, EQ)) for k in reps}
    for i in reps:
        for j in reps:
            if i in below[j] and j in below[i] and i != j:
                return "antisymmetry violated on classes"
    for j in reps:
        for k in below[j]:
            if not below[k] <= below[j]:
                return "order not transitive"
    for k in reps:
        # once transitive, a size-sorted predecessor set is a chain iff
        # consecutive entries are comparable
        lows = sorted(below[k], key=lambda a: len(below[a]))
        for a, b in zip(lows, lows[1:]):
            if a not in below[b] and b not in below[a]:
                return "predecessors of a class not a chain"
    index_of = {term: i for i, term in enumerate(tp.terms)}
    meet_of = {}
    for ri in reps:
        for rj in reps:
            lows = below[ri] & below[rj]
            # nested below-sets make the largest one the top of the chain
            meet_of[ri, rj] = (
                max(lows, key=lambda a: len(below[a])) if lows else None
            )
    for i in range(n):
        ti = tp.terms[i]
        for j in range(n):
            m = meet_of[rep[i], rep[j]]
            if m is None:
                return "a term pair has no meet class"
            u = ti | tp.terms[j]
            if len(u) <= 2 and rows[m][index_of[u]] != EQ:
                return "meet does not match generator union"
    for sym, table in tp.facts:
        for i in range(n):
            ri = rep[i]
            for j in range(n):
                v = table[i * n + j]
                if i == j and v:
                    return f"{sym} reflexive fact"
                if v and rows[i][j] != INCOMPARABLE:
                    return f"{sym} holds on comparable terms"
                if v != table[ri * n + rep[j]]:
                    return f"{sym} not constant on EQ classes"
    return None


def qf_type_of(N, B: Iterable[str], b: Sequence[str]) -> QfType:
    """The canonical qf type of tuple b over base B in structure N."""
    t = structure_tree(N)
    base = tuple(sorted(set(B)))
    for name in base:
        if is_var(name):
            raise ValueError(f"base id {name!r} collides with variable naming")
        t.index(name)
    for m1, m2 in combinations(base, 2):
        m = meet(t, m1, m2)
        if m not in set(base):
            raise NonMeetClosedError((m1, m2), m)
    b = tuple(b)
    for x in b:
        t.index(x)
    terms = make_terms(len(b), base)
    pts = []
    for term in terms:
        pt = None
        for g in sorted(term):
            node = b[int(g[1:])] if is_var(g) else g
            pt = node if pt is None else meet(t, pt, node)
        pts.append(pt)
    n = len(terms)
    rel = tuple(compare(t, pts[i], pts[j]) for i in range(n) for j in range(n))
    facts = []
    for sym in sorted(structure_symbols(N)):
        table = tuple(
            bool(N.holds(sym, pts[i], pts[j])) for i in range(n) for j in range(n)
        )
        facts.append((sym, table))
    return QfType(base, len(b), terms, rel, tuple(facts))


def restrict(tp: QfType, keep: Sequence[int]) -> QfType:
    """The type of the sub-tuple (b[keep[0]], b[keep[1]], ...) over the same base."""
    keep = tuple(keep)
    if len(set(keep)) != len(keep) or any(i < 0 or i >= tp.var_count for i in keep):
        raise ValueError("keep must be distinct variable indices")
    rename = {var_name(old): var_name(new) for new, old in enumerate(keep)}

    def kept(term):
        return all(not is_var(g) or g in rename for g in term)

    def renamed(term):
        return frozenset(rename.get(g, g) for g in term)

    new_terms = make_terms(len(keep), tp.base)
    back = {renamed(t): i for i, t in enumerate(tp.terms) if kept(t)}
    src = [back[t] for t in new_terms]
    n = len(new_terms)
    rel = tuple(tp.rel_at(src[i], src[j]) for i in range(n) for j in range(n))
    facts = tuple(
        (sym, tuple(table[src[i] * tp.n + src[j]] for i in range(n) for j in range(n)))
        for sym, table in tp.facts
    )
    return QfType(tp.base, len(keep), new_terms, rel, facts)


# -- JSON --------------------------------------------------------------------


def qftype_to_json(tp: QfType) -> dict:
    n = tp.n
    return {
        "base": list(tp.base),
        "vars": tp.var_count,
        "terms": [sorted(t, key=gen_sort_key) for t in tp.terms],
        "order": [[i, j, tp.rel_at(i, j)] for i in range(n) for j in range(i + 1, n)],
        "rels": {
            sym: [[i, j, table[i * n + j]] for i in range(n) for j in range(n) if i != j]
            for sym, table in tp.facts
        },
    }


def qftype_from_json(data: dict) -> QfType:
    base = tuple(data["base"])
    var_count = int(data["vars"])
    terms = tuple(frozenset(t) for t in data["terms"])
    if terms != make_terms(var_count, base):
        raise ValueError("non-canonical term table in JSON")
    n = len(terms)
    rel = [EQ] * (n * n)
    for i, j, r in data["order"]:
        if r not in _INV:
            raise ValueError(f"bad relation {r!r}")
        rel[i * n + j] = r
        rel[j * n + i] = _INV[r]
    facts = []
    for sym in sorted(data.get("rels", ())):
        table = [False] * (n * n)
        for i, j, v in data["rels"][sym]:
            table[i * n + j] = bool(v)
        facts.append((sym, tuple(table)))
    return QfType(base, var_count, terms, tuple(rel), tuple(facts))


# -- conversion to constraint atoms -------------------------------------------


def shift_vars(term: frozenset, offset: int) -> frozenset:
    return frozenset(var_name(int(g[1:]) + offset) if is_var(g) else g for g in term)


def type_constraints(tp: QfType, var_offset: int = 0) -> tuple:
    """tp as a tuple of constraint atoms (variables shifted by var_offset)."""
    out = []
    n = tp.n
    for i in range(n):
        ti = Meet(shift_vars(tp.terms[i], var_offset))
        for j in range(i + 1, n):
            tj = Meet(shift_vars(tp.terms[j], var_offset))
            r = tp.rel_at(i, j)
            if r == EQ:
                out.append(Cmp("=", ti, tj))
            elif r == LT:
                out.append(Cmp("<", ti, tj))
            elif r == GT:
                out.append(Cmp("<", tj, ti))
            else:
                both = Meet(ti.gens | tj.gens)
                out.append(Cmp("<", both, ti))
                out.append(Cmp("<", both, tj))
    for sym, table in tp.facts:
        for i in range(n):
            for j in range(n):
                if i != j and tp.rel_at(i, j) == INCOMPARABLE:
                    out.append(
                        Rel(
                            sym,
                            Meet(shift_vars(tp.terms[i], var_offset)),
                            Meet(shift_vars(tp.terms[j], var_offset)),
                            bool(table[i * n + j]),
                        )
                    )
    return tuple(out)
