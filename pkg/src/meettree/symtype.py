"""Symbolic records for invariant 1-types and their interaction rules.

A nonrealised 1-type over a meet-tree is remembered by three coordinates:
its kind, its cut (the chain of base points below it), and, when the cut
has a maximum, which open cone above that maximum it lives in. Over a
finite base every cut has a maximum, so only the kinds Realised, Ib, II
and IIIb arise from classify_point; Ia and IIIa exist in the symbolic
catalog to model cuts approached through a small linear set from above.
Two nonrealised types are either weakly orthogonal or they dominate each
other, and the verdict is read off the records alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NonMeetClosedError, RealisedTypeError
from .qftype import structure_tree
from .tree import EQ, GT, LT, compare, meet

__all__ = [
    "REALISED",
    "IA",
    "IB",
    "II",
    "IIIA",
    "IIIB",
    "KINDS",
    "ORTHOGONAL",
    "DOM_EQUIVALENT",
    "REALISED_ABSORBED",
    "EMPTY_CUT",
    "SymbolicCut",
    "ExistingCone",
    "NewCone",
    "SymbolicType1",
    "Graft",
    "classify_point",
    "relate",
    "is_equidominant",
    "graft_of",
    "sprout_of",
    "symbolic_catalog",
    "symtype_to_json",
    "symtype_from_json",
]

REALISED = "Realised"
IA = "Ia"
IB = "Ib"
II = "II"
IIIA = "IIIa"
IIIB = "IIIb"
KINDS = (REALISED, IA, IB, II, IIIA, IIIB)

# 1-types sit inside an open cone exactly in these kinds
_CONED = (IB, IIIB)
# branching kinds: the point is below no base point but its meet with one
# realizes the corresponding non-branching kind
_ABOVE_FAMILY = (IA, IIIA)

ORTHOGONAL = "orthogonal"
DOM_EQUIVALENT = "dom-equivalent"
REALISED_ABSORBED = "realised-absorbed"


@dataclass(frozen=True)
class SymbolicCut:
    """A cut of the base: id token, plus whether it has a top point."""

    id: str
    has_maximum: bool = False
    max_point: str | None = None
    bounded: bool = True

    def __post_init__(self):
        if self.has_maximum and self.max_point is None:
            raise ValueError("a cut with a maximum needs its top point")
        if not self.has_maximum and self.max_point is not None:
            raise ValueError("a top point implies has_maximum")


EMPTY_CUT = SymbolicCut("empty")


@dataclass(frozen=True)
class ExistingCone:
    id: str


@dataclass(frozen=True)
class NewCone:
    pass


@dataclass(frozen=True)
class SymbolicType1:
    kind: str
    cut: SymbolicCut
    cone: ExistingCone | NewCone | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == II:
            if not self.cut.has_maximum:
                raise ValueError("a new-cone type needs a cut with a maximum")
            if not isinstance(self.cone, NewCone):
                raise ValueError("a new-cone type carries the NewCone selector")
        elif self.kind in _CONED and self.cut.has_maximum:
            if not isinstance(self.cone, ExistingCone):
                raise ValueError("an in-cone type over a topped cut names its cone")
        elif self.cone is not None:
            raise ValueError(f"kind {self.kind} carries no cone selector")


@dataclass(frozen=True)
class Graft:
    """The domination-class datum of a non-branching-point type."""

    cut_id: str
    cone_id: str | None = None


def _chain_id(chain) -> str:
    return "<".join(chain)


def _validate_base(t, base) -> None:
    for m in base:
        t.index(m)
    if t.root() not in base:
        raise ValueError("base must contain the root")
    for m1, m2 in combinations(base, 2):
        w = meet(t, m1, m2)
        if w not in base:
            raise NonMeetClosedError((m1, m2), w)


def classify_point(N, M, b: str) -> SymbolicType1:
    """The symbolic 1-type of the node b over the meet-closed base M.

    M must contain the root, so the cut of b is a nonempty chain with a
    maximum g. The kind is then decided by the base points in b's open
    cone above g: none gives II; some, all above b, gives Ib; some,
    branching off b outside M, gives IIIb (the base being meet-closed
    rules out a mixture). Ia and IIIa never arise over a finite base.
    """
    t = structure_tree(N)
    base = tuple(sorted(set(M)))
    _validate_base(t, base)
    t.index(b)

    cut = sorted(
        (m for m in base if compare(t, m, b) in (LT, EQ)), key=t.depth_of
    )
    g = cut[-1]
    sym_cut = SymbolicCut(_chain_id(cut), has_maximum=True, max_point=g)
    if b in set(base):
        return SymbolicType1(REALISED, sym_cut)
    mates = [m for m in base if compare(t, meet(t, m, b), g) == GT]
    if not mates:
        return SymbolicType1(II, sym_cut, NewCone())
    cone_rep = mates[0]
    for m in mates[1:]:
        cone_rep = meet(t, cone_rep, m)
    kind = IB if all(compare(t, b, m) == LT for m in mates) else IIIB
    return SymbolicType1(kind, sym_cut, ExistingCone(cone_rep))


def _family(kind: str) -> str:
    if kind in _ABOVE_FAMILY:
        return "above"
    if kind in _CONED:
        return "cone"
    return "new"


def relate(p: SymbolicType1, q: SymbolicType1) -> str:
    """Weak orthogonality versus domination-equivalence, off the records.

    Realised types absorb into everything. Distinct cuts are orthogonal;
    so are distinct families over one cut, and in-cone types in distinct
    cones. What remains shares its whole graft or sprout datum.
    """
    if p.kind == REALISED or q.kind == REALISED:
        return REALISED_ABSORBED
    if p.cut.id != q.cut.id:
        return ORTHOGONAL
    if _family(p.kind) != _family(q.kind):
        return ORTHOGONAL
    if _family(p.kind) == "cone" and p.cone != q.cone:
        return ORTHOGONAL
    return DOM_EQUIVALENT


def is_equidominant(p: SymbolicType1, q: SymbolicType1) -> str:
    """"yes", "no", or "unknown" (the last is never guessed away).

    Beyond identical records: a branching type over a linear set is
    equidominant to its non-branching partner, while over the empty cut
    the in-cone pair IIIb/Ib is provably not. Orthogonal nonrealised
    pairs are never equidominant. The rest is open.
    """
    if p == q:
        return "yes"
    if p.kind == REALISED and q.kind == REALISED:
        return "yes"
    verdict = relate(p, q)
    if verdict == REALISED_ABSORBED:
        return "no"
    if verdict == ORTHOGONAL:
        return "no"
    kinds = {p.kind, q.kind}
    if kinds == {IA, IIIA}:
        return "yes"
    if kinds == {IB, IIIB} and p.cut.id == EMPTY_CUT.id:
        return "no"
    return "unknown"


def graft_of(p: SymbolicType1) -> Graft:
    if p.kind == REALISED:
        raise RealisedTypeError("realised types carry no graft")
    if p.kind == II:
        raise ValueError("new-cone types carry a sprout, not a graft")
    cone = p.cone.id if isinstance(p.cone, ExistingCone) else None
    return Graft(p.cut.id, cone)


def sprout_of(p: SymbolicType1) -> str:
    if p.kind == REALISED:
        raise RealisedTypeError("realised types carry no sprout")
    if p.kind != II:
        raise ValueError("only new-cone types carry a sprout")
    return p.cut.max_point


def symbolic_catalog(cuts, cone_ids) -> tuple:
    """Every valid record over the given cut and cone pools."""
    out = []
    for cut in cuts:
        out.append(SymbolicType1(REALISED, cut))
        out.append(SymbolicType1(IA, cut))
        out.append(SymbolicType1(IIIA, cut))
        if cut.has_maximum:
            out.append(SymbolicType1(II, cut, NewCone()))
            for c in cone_ids:
                out.append(SymbolicType1(IB, cut, ExistingCone(c)))
                out.append(SymbolicType1(IIIB, cut, ExistingCone(c)))
        else:
            out.append(SymbolicType1(IB, cut))
            out.append(SymbolicType1(IIIB, cut))
    return tuple(out)


def symtype_to_json(p: SymbolicType1) -> dict:
    cut = {"id": p.cut.id}
    if p.cut.has_maximum:
        cut["max"] = p.cut.max_point
    if not p.cut.bounded:
        cut["bounded"] = False
    out = {"kind": p.kind, "cut": cut}
    if isinstance(p.cone, ExistingCone):
        out["cone"] = {"existing": p.cone.id}
    elif isinstance(p.cone, NewCone):
        out["cone"] = {"new": True}
    return out


def symtype_from_json(data: dict) -> SymbolicType1:
    cut = SymbolicCut(
        data["cut"]["id"],
        has_maximum="max" in data["cut"],
        max_point=data["cut"].get("max"),
        bounded=data["cut"].get("bounded", True),
    )
    cone = None
    if "cone" in data:
        if "existing" in data["cone"]:
            cone = ExistingCone(data["cone"]["existing"])
        else:
            cone = NewCone()
    return SymbolicType1(data["kind"], cut, cone)
