"""Finite meet-trees as rooted posets.

A finite meet-tree is exactly a single-rooted parent forest: the order is
"ancestor-or-self", every pair of nodes has a greatest common lower bound
(the lowest common ancestor), and predecessor sets are chains by
construction. An optional `base` marks a meet-closed parameter
substructure.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from . import _kernels as K
from .errors import (
    DuplicateNodeError,
    EmbeddingError,
    InvalidTreeError,
    NonMeetClosedError,
    NotAnEdgeError,
    UnknownNodeError,
)

NodeId = str

LT = "LT"
GT = "GT"
EQ = "EQ"
INCOMPARABLE = "INCOMPARABLE"

_CODE_REL = {K.EQ: EQ, K.LT: LT, K.GT: GT, K.INC: INCOMPARABLE}


@dataclass(frozen=True)
class Violation:
    rule: str
    nodes: tuple

    def __str__(self):
        return f"{self.rule}: {', '.join(map(repr, self.nodes))}" if self.nodes else self.rule


class MeetTree:
    """Immutable finite meet-tree.

    `parent` maps every non-root node to its parent; the root is either
    absent from the map or mapped to None. Construction never raises on
    malformed data — `validate` reports the first violated invariant —
    but every order-theoretic operation requires a valid tree.
    """

    __slots__ = ("nodes", "parent", "base", "_names", "_idx", "_par", "_dep", "_violation")

    def __init__(self, nodes: Iterable[NodeId], parent: Mapping[NodeId, Optional[NodeId]],
                 base: Iterable[NodeId] = ()):
        object.__setattr__(self, "nodes", frozenset(nodes))
        object.__setattr__(self, "parent", dict(parent))
        object.__setattr__(self, "base", frozenset(base))
        object.__setattr__(self, "_names", tuple(sorted(self.nodes)))
        object.__setattr__(self, "_idx", {n: i for i, n in enumerate(self._names)})
        object.__setattr__(self, "_par", None)
        object.__setattr__(self, "_dep", None)
        object.__setattr__(self, "_violation", None)

    def __setattr__(self, name, value):
        raise AttributeError("MeetTree is immutable")

    def __repr__(self):
        return f"MeetTree({len(self.nodes)} nodes, root={self.root() if self.is_valid() else '?'!s})"

    # -- validation ------------------------------------------------------

    def validate(self) -> Optional[Violation]:
        v = self._check()
        return v

    def is_valid(self) -> bool:
        return self._check() is None

    def _check(self) -> Optional[Violation]:
        if self._par is not None:
            return None
        if self._violation is not None:
            return self._violation
        v = self._check_raw()
        if v is not None:
            object.__setattr__(self, "_violation", v)
        return v

    def _check_raw(self) -> Optional[Violation]:
        nodes, parent = self.nodes, self.parent
        for k, p in sorted(parent.items()):
            if k not in nodes:
                return Violation("unknown node", (k,))
            if p is not None and p not in nodes:
                return Violation("unknown parent", (k, p))
        roots = sorted(n for n in nodes if parent.get(n) is None)
        if not nodes or not roots:
            return Violation("no root", tuple(sorted(nodes))[:4])
        if len(roots) > 1:
            return Violation("multiple roots", tuple(roots))
        # depth computation doubles as the cycle check
        names, idx = self._names, self._idx
        n = len(names)
        par = array("i", [-1]) * n
        dep = array("i", [-1]) * n
        for i, name in enumerate(names):
            p = parent.get(name)
            par[i] = -1 if p is None else idx[p]
        dep[idx[roots[0]]] = 0
        for i in range(n):
            trail = []
            seen = set()
            j = i
            while dep[j] < 0:
                trail.append(j)
                seen.add(j)
                j = par[j]
                if j in seen:
                    return Violation("cycle", tuple(sorted(names[t] for t in trail)))
            d = dep[j]
            for t in reversed(trail):
                d += 1
                dep[t] = d
        bad_base = sorted(self.base - nodes)
        if bad_base:
            return Violation("base not a subset", tuple(bad_base))
        members = sorted(self._idx[b] for b in self.base)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                m = K.lca(par, dep, members[i], members[j])
                if names[m] not in self.base:
                    return Violation(
                        "base not meet-closed", (names[members[i]], names[members[j]], names[m])
                    )
        object.__setattr__(self, "_par", par)
        object.__setattr__(self, "_dep", dep)
        return None

    # -- low-level access -------------------------------------------------

    def _arrays(self):
        v = self._check()
        if v is not None:
            raise InvalidTreeError(v)
        return self._par, self._dep

    def index(self, node: NodeId) -> int:
        i = self._idx.get(node)
        if i is None:
            raise UnknownNodeError(node)
        return i

    def name(self, i: int) -> NodeId:
        return self._names[i]

    def names(self) -> tuple:
        return self._names

    def root(self) -> NodeId:
        par, _ = self._arrays()
        for i, p in enumerate(par):
            if p < 0:
                return self._names[i]
        raise AssertionError("valid tree without root")

    def parent_of(self, node: NodeId) -> Optional[NodeId]:
        self._arrays()
        self.index(node)
        return self.parent.get(node)

    def children(self, node: NodeId) -> tuple:
        self._arrays()
        self.index(node)
        return tuple(sorted(k for k, p in self.parent.items() if p == node))

    def depth_of(self, node: NodeId) -> int:
        _, dep = self._arrays()
        return dep[self.index(node)]

    def with_base(self, base: Iterable[NodeId]) -> "MeetTree":
        return MeetTree(self.nodes, self.parent, base)


# -- order operations ------------------------------------------------------


def validate(t: MeetTree) -> Optional[Violation]:
    return t.validate()


def compare(t: MeetTree, a: NodeId, b: NodeId) -> str:
    par, dep = t._arrays()
    return _CODE_REL[K.rel_code(par, dep, t.index(a), t.index(b))]


def meet(t: MeetTree, a: NodeId, b: NodeId) -> NodeId:
    par, dep = t._arrays()
    return t.name(K.lca(par, dep, t.index(a), t.index(b)))


def is_le(t: MeetTree, a: NodeId, b: NodeId) -> bool:
    par, dep = t._arrays()
    return bool(K.is_le(par, dep, t.index(a), t.index(b)))


def meet_closure(t: MeetTree, A: Iterable[NodeId]) -> frozenset:
    par, dep = t._arrays()
    seeds = [t.index(a) for a in A]
    return frozenset(t.name(i) for i in K.closure_set(par, dep, seeds))


def induced_tree(t: MeetTree, nodes: Iterable[NodeId]) -> MeetTree:
    """The substructure on a meet-closed node set; parent = nearest kept ancestor."""
    keep = set(nodes)
    for x in keep:
        t.index(x)
    closed = meet_closure(t, keep)
    if closed != keep:
        for a in sorted(keep):
            for b in sorted(keep):
                if meet(t, a, b) not in keep:
                    raise NonMeetClosedError((a, b), meet(t, a, b))
    parent = {}
    for x in keep:
        p = t.parent_of(x)
        while p is not None and p not in keep:
            p = t.parent_of(p)
        parent[x] = p
    return MeetTree(sorted(keep), parent)


def cone_child(t: MeetTree, g: NodeId, x: NodeId) -> NodeId:
    """The immediate child of g whose subtree contains x; requires g < x.

    Open cones above g are exactly the child subtrees, so this child id
    canonically names x's cone.
    """
    par, dep = t._arrays()
    gi, xi = t.index(g), t.index(x)
    if not (K.is_le(par, dep, gi, xi) and gi != xi):
        raise ValueError(f"{x!r} is not strictly above {g!r}")
    target = dep[gi] + 1
    while dep[xi] > target:
        xi = par[xi]
    return t.name(xi)


# -- extension moves -------------------------------------------------------


@dataclass(frozen=True)
class AddNewCone:
    g: NodeId
    new_id: NodeId


@dataclass(frozen=True)
class AddBetween:
    a: NodeId
    b: NodeId
    new_id: NodeId


@dataclass(frozen=True)
class AddBelowRoot:
    new_id: NodeId


ExtensionMove = Union[AddNewCone, AddBetween, AddBelowRoot]


def extend(t: MeetTree, move: ExtensionMove) -> MeetTree:
    t._arrays()
    new = move.new_id
    if new in t.nodes:
        raise DuplicateNodeError(new)
    parent = dict(t.parent)
    if isinstance(move, AddNewCone):
        t.index(move.g)
        parent[new] = move.g
    elif isinstance(move, AddBetween):
        t.index(move.a)
        t.index(move.b)
        if t.parent.get(move.b) != move.a:
            raise NotAnEdgeError(move.a, move.b)
        parent[new] = move.a
        parent[move.b] = new
    elif isinstance(move, AddBelowRoot):
        parent[t.root()] = new
        parent[new] = None
    else:
        raise TypeError(f"not an extension move: {move!r}")
    return MeetTree(t.nodes | {new}, parent, t.base)


def one_point_moves(t: MeetTree, new_id: NodeId) -> list:
    """Every one-point extension position of t, in canonical order."""
    moves = [AddBelowRoot(new_id)]
    for g in t.names():
        moves.append(AddNewCone(g, new_id))
    for b in t.names():
        p = t.parent.get(b)
        if p is not None:
            moves.append(AddBetween(p, b, new_id))
    return moves


def random_tree(n: int, seed: int, prefix: str = "n") -> MeetTree:
    """Random valid tree with n nodes; every move kind has positive probability."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    names = [f"{prefix}{i}" for i in range(n)]
    parent = {names[0]: None}
    root = names[0]
    non_roots = []
    for i in range(1, n):
        new = names[i]
        roll = rng.random()
        if roll < 0.05:
            parent[root] = new
            parent[new] = None
            non_roots.append(root)
            root = new
        elif roll < 0.25 and non_roots:
            b = non_roots[rng.randrange(len(non_roots))]
            parent[new] = parent[b]
            parent[b] = new
            non_roots.append(new)
        else:
            g = names[rng.randrange(i)]
            parent[new] = g
            non_roots.append(new)
    return MeetTree(names, parent)


# -- amalgamation ----------------------------------------------------------


def _check_embedding(A: MeetTree, B: MeetTree, e: Mapping, label: str) -> None:
    if set(e) != set(A.nodes):
        raise EmbeddingError(f"{label}: domain must be exactly the nodes of A")
    img = set(e.values())
    if len(img) != len(e):
        raise EmbeddingError(f"{label}: not injective")
    if not img <= B.nodes:
        raise EmbeddingError(f"{label}: image leaves the codomain")
    names = sorted(A.nodes)
    for i, a1 in enumerate(names):
        for a2 in names[i:]:
            if e[meet(A, a1, a2)] != meet(B, e[a1], e[a2]):
                raise EmbeddingError(f"{label}: does not preserve meet({a1!r}, {a2!r})")


def amalgamate(A: MeetTree, B: MeetTree, C: MeetTree, e_ab: Mapping, e_ac: Mapping):
    """Free amalgam of B and C over A.

    Returns (D, f_bd, f_cd) with f_bd, f_cd meet-embeddings agreeing on A.
    New points are kept in distinct cones whenever consistent; when B- and
    C-points are forced onto a common chain segment, B-points end up below
    C-points: each C-point is spliced directly below the image of the least
    A-point above it.
    """
    for t in (A, B, C):
        t._arrays()
    _check_embedding(A, B, e_ab, "eAB")
    _check_embedding(A, C, e_ac, "eAC")

    parent_d = dict(B.parent)
    nodes_d = set(B.nodes)
    pi = {e_ac[a]: e_ab[a] for a in A.nodes}
    a_image_in_c = set(pi)

    def fresh(cid):
        while cid in nodes_d:
            cid = cid + "'"
        return cid

    order = sorted((C.depth_of(c), c) for c in C.nodes if c not in a_image_in_c)
    for _, c in order:
        above = [y for y in a_image_in_c if is_le(C, c, y) and y != c]
        cid = fresh(c)
        if above:
            v0 = min(above, key=lambda y: (C.depth_of(y), y))
            v = pi[v0]
            parent_d[cid] = parent_d.get(v)
            parent_d[v] = cid
        else:
            pc = C.parent.get(c)
            if pc is None:
                # empty A: hang C's tree in a new cone above B's root
                parent_d[cid] = min(k for k, p in parent_d.items() if p is None)
            else:
                parent_d[cid] = pi[pc]
        nodes_d.add(cid)
        pi[c] = cid

    D = MeetTree(nodes_d, parent_d)
    bad = D.validate()
    if bad is not None:  # pragma: no cover - construction keeps D a tree
        raise AssertionError(f"amalgam failed to validate: {bad}")
    f_bd = {b: b for b in B.nodes}
    f_cd = {c: pi[c] for c in C.nodes}
    return D, f_bd, f_cd
