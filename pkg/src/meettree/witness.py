"""Auxiliary tuples that close a base-plus-tuple under meets.

Given a meet-closed base M and a tuple b, `meet_witness` produces a
finite tuple d such that M ∪ b ∪ d is meet-closed, together with
c = d ∩ M and an anchor map: every point e of b ∪ d outside M gets an
anchor a_e ∈ c strictly above e's cut {m ∈ M : m ≤ e}, lying in e's
open cone above the cut's maximum whenever that cone contains a point
of M. The anchors are what later lets a pair type over the small
tuple c be repositioned over all of M.

c consists exactly of the anchors:  meets of b with M that happen to
land inside M are not echoed into d, and an anchor may be a coordinate
of b itself when the base offers nothing else in the required cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CutUncovered, NonMeetClosedError
from .qftype import structure_tree
from .tree import MeetTree, cone_child, is_le, meet, meet_closure


@dataclass(frozen=True)
class MeetWitness:
    d: tuple  # auxiliary points, sorted
    c: tuple  # d ∩ base = the anchors, sorted
    a_map: dict = field(compare=False)  # point outside the base -> anchor in c

    def __post_init__(self):
        object.__setattr__(self, "a_map", dict(self.a_map))


def _cut(t: MeetTree, M: frozenset, x: str) -> frozenset:
    return frozenset(m for m in M if is_le(t, m, x))


def _cut_max(t: MeetTree, cut: frozenset):
    if not cut:
        return None
    return max(cut, key=t.depth_of)


def _pick_anchor(t, M, b_set, e, cut, pool):
    """Least admissible anchor for e from pool: strictly above the cut,
    inside e's open cone whenever the cone offers a candidate; points
    outside b are preferred over coordinates of b."""
    cands = sorted(
        (a for a in pool if all(is_le(t, m, a) and m != a for m in cut)),
        key=lambda a: (a in b_set, a),
    )
    if not cands:
        return None
    g = _cut_max(t, cut)
    if g is not None:
        cone = cone_child(t, g, e)
        mates = [a for a in cands if cone_child(t, g, a) == cone]
        if mates:
            return mates[0]
    return cands[0]


def meet_witness(N, M: Iterable[str], b: Sequence[str]) -> MeetWitness:
    t = structure_tree(N)
    M = frozenset(M)
    if meet_closure(t, M) != M:
        for m1 in sorted(M):
            for m2 in sorted(M):
                mm = meet(t, m1, m2)
                if mm not in M:
                    raise NonMeetClosedError((m1, m2), mm)
    b = tuple(b)
    for x in b:
        t.index(x)
    b_set = frozenset(b)

    anchors = {}
    for bi in b:
        if bi in M or bi in anchors:
            continue
        cut = _cut(t, M, bi)
        a = _pick_anchor(t, M, b_set, bi, cut, M)
        if a is None:
            raise CutUncovered(bi, cut)
        anchors[bi] = a

    anchor_set = frozenset(anchors.values())
    closure = meet_closure(t, b_set | anchor_set)
    d = (closure - M - b_set) | anchor_set
    c = tuple(sorted(d & M))

    a_map = {}
    for e in sorted((b_set | d) - M):
        cut = _cut(t, M, e)
        a = _pick_anchor(t, M, b_set, e, cut, frozenset(c))
        if a is None:  # pragma: no cover - construction provides one
            raise AssertionError(f"no anchor for derived point {e!r}")
        a_map[e] = a
    return MeetWitness(tuple(sorted(d)), c, a_map)


def check_witness(N, M: Iterable[str], b: Sequence[str], w: MeetWitness):
    """Violation description or None; direct transcription of the postconditions."""
    t = structure_tree(N)
    M = frozenset(M)
    b_set = frozenset(b)
    d_set = frozenset(w.d)
    everything = M | b_set | d_set
    if meet_closure(t, everything) != everything:
        return "base+tuple+d not meet-closed"
    if frozenset(w.c) != d_set & M:
        return "c is not d ∩ base"
    if not d_set <= meet_closure(t, b_set | frozenset(w.c)):
        return "d leaves the closure of tuple and c"
    new = (b_set | d_set) - M
    if set(w.a_map) != new:
        return "anchor map domain mismatch"
    for e, a in w.a_map.items():
        if a not in w.c:
            return f"anchor {a!r} not in c"
        cut = _cut(t, M, e)
        if not all(is_le(t, m, a) and m != a for m in cut):
            return f"anchor {a!r} not strictly above the cut of {e!r}"
        g = _cut_max(t, cut)
        if g is not None:
            cone = cone_child(t, g, e)
            represented = any(
                cone_child(t, g, m) == cone for m in M if is_le(t, g, m) and m != g
            )
            if represented and cone_child(t, g, a) != cone:
                return f"anchor {a!r} outside the represented cone of {e!r}"
    return None
