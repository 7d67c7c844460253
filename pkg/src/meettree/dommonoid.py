"""The ordered commutative monoid of domination classes.

An element is a finite set of grafts (one per base cut and cone touched)
together with a finitely supported map from sprout points to values in a
pluggable sprout algebra. Over a bare tree the algebra is the naturals
under addition: the value at g counts the fresh cones opened above g.
Over a relational expansion it is instead a multiset of opaque cone
profiles, one per fresh cone, recording how that cone relates to the
cones above g that already hold base points; this multiset stand-in is a
desk-scale approximation, not a computation of the full algebra.

An element carries one sprout algebra for all of its keys. Combining
elements whose supports are both nonempty but whose algebras differ
raises SproutMonoidMismatch; an element with empty support is
algebra-agnostic and normalizes to the default.

The order is componentwise: graft-set inclusion plus pointwise algebra
order. The componentwise rule is a derived characterization, not a
verbatim one; the fragments that are forced (strictly increasing sprout
counts, absorption of weakly orthogonal factors) are pinned by tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SproutMonoidMismatch
from .expansion import cone_quotient
from .qftype import structure_symbols, structure_tree
from .symtype import II, Graft, _validate_base, classify_point, graft_of, sprout_of
from .tree import LT, compare, cone_child, meet_closure

__all__ = [
    "NatMonoid",
    "MultisetMonoid",
    "NAT",
    "CONE_TYPES",
    "MonoidElement",
    "EMPTY_ELEMENT",
    "mul",
    "leq",
    "wort",
    "class_of_tuple",
    "render_element",
    "monoid_to_json",
    "monoid_from_json",
]


@dataclass(frozen=True)
class NatMonoid:
    """Counts under addition, ordered as usual. The default algebra."""

    @property
    def identity(self):
        return 0

    def op(self, a, b):
        return a + b

    def leq(self, a, b) -> bool:
        return a <= b

    def render(self, a) -> str:
        return str(a)


@dataclass(frozen=True)
class MultisetMonoid:
    """Finite multisets of opaque tokens.

    Values are frozensets of (token, count) pairs with positive counts;
    the operation adds multiplicities and the order is sub-multiset
    inclusion. Rendering shows only the total count; the tokens
    themselves travel through JSON.
    """

    @property
    def identity(self):
        return frozenset()

    def op(self, a, b):
        counts = dict(a)
        for token, k in b:
            counts[token] = counts.get(token, 0) + k
        return frozenset(counts.items())

    def leq(self, a, b) -> bool:
        hi = dict(b)
        return all(hi.get(token, 0) >= k for token, k in a)

    def render(self, a) -> str:
        return str(sum(k for _, k in a))


NAT = NatMonoid()
CONE_TYPES = MultisetMonoid()


@dataclass(frozen=True)
class MonoidElement:
    """A domination class: grafts plus sprout values, identity dropped."""

    grafts: frozenset = frozenset()
    sprouts: tuple = ()
    monoid: NatMonoid | MultisetMonoid = NAT

    def __post_init__(self):
        object.__setattr__(self, "grafts", frozenset(self.grafts))
        items = dict(self.sprouts)
        cleaned = tuple(
            sorted(
                ((g, v) for g, v in items.items() if v != self.monoid.identity),
                key=lambda kv: kv[0],
            )
        )
        object.__setattr__(self, "sprouts", cleaned)
        if not cleaned:
            object.__setattr__(self, "monoid", NAT)

    def sprout_value(self, g: str):
        for key, v in self.sprouts:
            if key == g:
                return v
        return self.monoid.identity


EMPTY_ELEMENT = MonoidElement()


def _common_monoid(u: MonoidElement, v: MonoidElement):
    if u.monoid == v.monoid:
        return u.monoid
    if not u.sprouts:
        return v.monoid
    if not v.sprouts:
        return u.monoid
    raise SproutMonoidMismatch(
        f"cannot combine sprout values over {u.monoid!r} with {v.monoid!r}"
    )


def mul(u: MonoidElement, v: MonoidElement) -> MonoidElement:
    """Product of classes: grafts unite, sprout values combine pointwise."""
    monoid = _common_monoid(u, v)
    counts = dict(u.sprouts)
    for g, val in v.sprouts:
        counts[g] = monoid.op(counts[g], val) if g in counts else val
    return MonoidElement(u.grafts | v.grafts, counts, monoid)


def leq(u: MonoidElement, v: MonoidElement) -> bool:
    """Whether v dominates u, componentwise."""
    monoid = _common_monoid(u, v)
    if not u.grafts <= v.grafts:
        return False
    hi = dict(v.sprouts)
    return all(g in hi and monoid.leq(val, hi[g]) for g, val in u.sprouts)


def wort(u: MonoidElement, v: MonoidElement) -> bool:
    """Weak orthogonality: no shared graft, no shared sprout point."""
    _common_monoid(u, v)
    if u.grafts & v.grafts:
        return False
    return not ({g for g, _ in u.sprouts} & {g for g, _ in v.sprouts})


def _minimal_points(t, points):
    return [e for e in points if not any(compare(t, o, e) == LT for o in points)]


def _cone_profiles(N, t, base, g, minimal, syms):
    """One opaque token per fresh cone: its relations to base-held cones."""
    q = cone_quotient(N, g)
    held = sorted(
        {cone_child(t, g, m) for m in base if compare(t, g, m) == LT}
    )
    counts = {}
    for e in minimal:
        ec = cone_child(t, g, e)
        token = tuple(
            (sym, c, q.holds(sym, ec, c), q.holds(sym, c, ec))
            for sym in syms
            for c in held
        )
        counts[token] = counts.get(token, 0) + 1
    return frozenset(counts.items())


def class_of_tuple(N, M, b: tuple) -> MonoidElement:
    """Decompose a tuple over a base into its domination class.

    Every point of meet_closure(M + b) outside M either lands in a cone
    already holding base points (contributing that cone's graft, once)
    or opens a fresh cone above some base point g (contributing to the
    sprout value at g). Only the minimal fresh points count: anything
    above them is dominated already. With relational symbols present the
    fresh cones are recorded by their cone-profile tokens instead of
    being counted.
    """
    t = structure_tree(N)
    base = tuple(sorted(set(M)))
    _validate_base(t, base)
    for x in b:
        t.index(x)
    closed = meet_closure(t, set(base) | set(b))
    fresh = sorted(closed - set(base))
    grafts = set()
    buckets: dict[str, list] = {}
    for e in fresh:
        p = classify_point(t, base, e)
        if p.kind == II:
            buckets.setdefault(sprout_of(p), []).append(e)
        else:
            grafts.add(graft_of(p))
    syms = sorted(structure_symbols(N))
    sprouts = {}
    for g, pts in buckets.items():
        minimal = _minimal_points(t, pts)
        if syms:
            sprouts[g] = _cone_profiles(N, t, base, g, minimal, syms)
        else:
            sprouts[g] = len(minimal)
    return MonoidElement(grafts, sprouts, CONE_TYPES if syms else NAT)


def _graft_key(g: Graft):
    return (g.cut_id, g.cone_id or "")


def render_element(u: MonoidElement) -> str:
    parts = []
    if u.grafts:
        inner = ", ".join(
            f"x({g.cut_id},{g.cone_id})" if g.cone_id else f"x({g.cut_id})"
            for g in sorted(u.grafts, key=_graft_key)
        )
        parts.append("{" + inner + "}")
    for g, val in u.sprouts:
        parts.append(f"{u.monoid.render(val)}·s[{g}]")
    return " + ".join(parts) if parts else "0"


def monoid_to_json(u: MonoidElement) -> dict:
    grafts = []
    for g in sorted(u.grafts, key=_graft_key):
        entry = {"cut": g.cut_id}
        if g.cone_id is not None:
            entry["cone"] = g.cone_id
        grafts.append(entry)
    sprouts = {}
    for g, val in u.sprouts:
        if u.monoid == NAT:
            sprouts[g] = val
        else:
            sprouts[g] = {
                "cone_type": [
                    [[list(fact) for fact in token], k]
                    for token, k in sorted(val)
                ]
            }
    return {"grafts": grafts, "sprouts": sprouts}


def monoid_from_json(data: dict) -> MonoidElement:
    grafts = {Graft(e["cut"], e.get("cone")) for e in data["grafts"]}
    sprouts = {}
    monoid = NAT
    for g, val in data["sprouts"].items():
        if isinstance(val, dict):
            monoid = CONE_TYPES
            sprouts[g] = frozenset(
                (tuple((s, c, bool(o), bool(i)) for s, c, o, i in token), k)
                for token, k in val["cone_type"]
            )
        else:
            sprouts[g] = val
    return MonoidElement(grafts, sprouts, monoid)
