"""Binary cone-expansions of finite meet-trees.

An expansion adds binary relations that live "on open cones": a fact
R(x, y) forces x ∥ y, and its truth value only depends on the pair of
open cones above x ⊓ y containing x and y. `decorate_random` draws one
coin per cone pair and spreads the outcome over all point pairs, so the
invariance holds by construction; `validate_expansion` checks it for
arbitrary fact sets. Formula evaluation and the cone quotient live here
too; the tameness checker builds on the extension enumerator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Mapping, Union

from .formulas import And, Cmp, Meet, Not, Or, Rel, is_var
from .qftype import structure_symbols, structure_tree
from .tree import (
    EQ,
    GT,
    INCOMPARABLE,
    LT,
    MeetTree,
    Violation,
    compare,
    cone_child,
    induced_tree,
    meet,
    validate,
)


@dataclass(frozen=True)
class Signature:
    """Relation symbols; all are symmetric unless listed in `directed`."""

    symbols: tuple
    directed: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(sorted(self.symbols)))
        object.__setattr__(self, "directed", frozenset(self.directed))
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate relation symbols")
        for sym in self.symbols:
            if is_var(sym):
                raise ValueError(f"symbol {sym!r} collides with variable naming")
        if not self.directed <= set(self.symbols):
            raise ValueError(f"directed symbols not in signature: "
                             f"{sorted(self.directed - set(self.symbols))}")

    def is_symmetric(self, sym: str) -> bool:
        if sym not in self.symbols:
            raise KeyError(sym)
        return sym not in self.directed


#: the signature of the decorated-tree example: one symmetric relation
DTR = Signature(("R",))


@dataclass(frozen=True)
class ExpandedStructure:
    tree: MeetTree
    signature: Signature
    facts: tuple = ()  # ((symbol, frozenset of ordered node pairs), ...) sorted

    def __post_init__(self):
        items = self.facts.items() if isinstance(self.facts, Mapping) else self.facts
        norm = {sym: set() for sym in self.signature.symbols}
        for sym, pairs in items:
            if sym not in norm:
                raise ValueError(f"facts for unknown symbol {sym!r}")
            norm[sym].update((a, b) for a, b in pairs)
        object.__setattr__(
            self, "facts", tuple((sym, frozenset(norm[sym])) for sym in sorted(norm))
        )

    def symbols(self) -> tuple:
        return tuple(sym for sym, _ in self.facts)

    def pairs_of(self, sym: str) -> frozenset:
        for name, pairs in self.facts:
            if name == sym:
                return pairs
        raise KeyError(sym)

    def holds(self, sym: str, a: str, b: str) -> bool:
        return (a, b) in self.pairs_of(sym)


def validate_expansion(s: ExpandedStructure):
    """Violation or None. Checks facts only relate incomparable points and
    are constant on cone pairs (plus symmetry for symmetric symbols)."""
    t = s.tree
    bad = validate(t)
    if bad is not None:
        return bad
    node_set = set(t.nodes)
    for sym, pairs in s.facts:
        symmetric = s.signature.is_symmetric(sym)
        for a, b in sorted(pairs):
            if a not in node_set or b not in node_set:
                return Violation("unknown node in facts", (sym, a, b))
            if compare(t, a, b) != INCOMPARABLE:
                return Violation("fact on comparable pair", (sym, a, b))
            if symmetric and (b, a) not in pairs:
                return Violation("asymmetric facts for symmetric symbol", (sym, a, b))
    nodes = sorted(node_set)
    for sym, pairs in s.facts:
        seen = {}
        for a in nodes:
            for b in nodes:
                if a >= b or compare(t, a, b) != INCOMPARABLE:
                    continue
                for x, y in ((a, b), (b, a)):
                    g = meet(t, x, y)
                    key = (g, cone_child(t, g, x), cone_child(t, g, y))
                    val = (x, y) in pairs
                    prev = seen.get(key)
                    if prev is None:
                        seen[key] = (val, (x, y))
                    elif prev[0] != val:
                        hold = prev[1] if prev[0] else (x, y)
                        fail = (x, y) if prev[0] else prev[1]
                        return Violation(
                            "cone-invariance broken", (sym, *hold, *fail)
                        )
    return None


def _subtrees(t: MeetTree) -> dict:
    """node -> sorted list of nodes of its subtree."""
    out = {x: [x] for x in t.nodes}
    for x in sorted(t.nodes, key=t.depth_of, reverse=True):
        p = t.parent_of(x)
        if p is not None:
            out[p].extend(out[x])
    return {x: sorted(v) for x, v in out.items()}


def decorate_random(
    t: MeetTree, sig: Signature, density: float, seed
) -> ExpandedStructure:
    """One biased coin per cone pair, spread over all realizing point pairs.

    Draw order is fixed so a run is reproducible from the seed alone:
    nodes sorted; per node, symbols in signature order; per symbol, child
    pairs sorted (unordered for symmetric symbols, ordered otherwise).
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density out of range: {density}")
    rng = random.Random(seed)
    sub = _subtrees(t)
    facts = {sym: set() for sym in sig.symbols}
    for g in sorted(t.nodes):
        kids = sorted(t.children(g))
        for sym in sig.symbols:
            pair_iter = (
                combinations(kids, 2)
                if sig.is_symmetric(sym)
                else permutations(kids, 2)
            )
            for c1, c2 in pair_iter:
                if rng.random() < density:
                    facts[sym].update(
                        (x, y) for x in sub[c1] for y in sub[c2]
                    )
                    if sig.is_symmetric(sym):
                        facts[sym].update(
                            (y, x) for x in sub[c1] for y in sub[c2]
                        )
    return ExpandedStructure(t, sig, facts)


@dataclass(frozen=True)
class ConeQuotient:
    """The relational structure induced on the open cones above a point."""

    point: str
    cones: tuple  # the child node of each open cone, sorted
    facts: tuple  # ((symbol, frozenset of ordered cone pairs), ...) sorted

    def holds(self, sym: str, c1: str, c2: str) -> bool:
        for name, pairs in self.facts:
            if name == sym:
                return (c1, c2) in pairs
        raise KeyError(sym)


def induced_structure(s, keep):
    """The substructure on `keep`: induced tree plus restricted facts."""
    sub = induced_tree(structure_tree(s), keep)
    if not hasattr(s, "facts"):
        return sub
    kept = set(keep)
    facts = {
        sym: frozenset(p for p in ps if p[0] in kept and p[1] in kept)
        for sym, ps in s.facts
    }
    return ExpandedStructure(sub, s.signature, facts)


def cone_quotient(s, g: str) -> ConeQuotient:
    """Cones above g with facts read off representative pairs (the child
    nodes themselves); well defined when s validates."""
    t = structure_tree(s)
    kids = tuple(sorted(t.children(g)))
    facts = []
    for sym in sorted(structure_symbols(s)):
        pairs = frozenset(
            (c1, c2) for c1, c2 in permutations(kids, 2) if s.holds(sym, c1, c2)
        )
        facts.append((sym, pairs))
    return ConeQuotient(g, kids, tuple(facts))


# -- formula evaluation --------------------------------------------------------


def term_value(N, t: Meet, a: str) -> str:
    """The node a meet-term evaluates to, with a substituted for variables."""
    tree = structure_tree(N)
    pt = None
    for g in sorted(t.gens):
        node = a if is_var(g) else g
        tree.index(node)
        pt = node if pt is None else meet(tree, pt, node)
    return pt


_CMP_OK = {
    "=": (EQ,),
    "<": (LT,),
    "<=": (LT, EQ),
    ">": (GT,),
    ">=": (GT, EQ),
}


def eval_formula(s, f: Union[Cmp, Rel, Not, And, Or], a: str) -> bool:
    """Evaluate a one-free-variable formula at point a of structure s."""
    t = structure_tree(s)
    t.index(a)
    if isinstance(f, Not):
        return not eval_formula(s, f.arg, a)
    if isinstance(f, And):
        return eval_formula(s, f.lhs, a) and eval_formula(s, f.rhs, a)
    if isinstance(f, Or):
        return eval_formula(s, f.lhs, a) or eval_formula(s, f.rhs, a)
    if isinstance(f, Cmp):
        r = compare(t, term_value(s, f.lhs, a), term_value(s, f.rhs, a))
        return r in _CMP_OK[f.op]
    if isinstance(f, Rel):
        if f.name not in structure_symbols(s):
            raise ValueError(f"unknown relation {f.name!r}")
        res = s.holds(f.name, term_value(s, f.lhs, a), term_value(s, f.rhs, a))
        return bool(res) == f.holds
    raise TypeError(f"not a formula: {f!r}")
