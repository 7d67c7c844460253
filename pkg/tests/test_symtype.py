from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meettree import (
    DOM_EQUIVALENT,
    EMPTY_CUT,
    IA,
    IB,
    II,
    IIIA,
    IIIB,
    KINDS,
    ORTHOGONAL,
    REALISED,
    REALISED_ABSORBED,
    ExistingCone,
    Graft,
    MeetTree,
    NewCone,
    NonMeetClosedError,
    RealisedTypeError,
    SymbolicCut,
    SymbolicType1,
    UnknownNodeError,
    classify_point,
    cone_child,
    graft_of,
    is_equidominant,
    meet_closure,
    qf_type_of,
    random_tree,
    relate,
    sprout_of,
    symbolic_catalog,
    symtype_from_json,
    symtype_to_json,
)

CUT_RG = SymbolicCut("r<g", has_maximum=True, max_point="g")
CUT_R = SymbolicCut("r", has_maximum=True, max_point="r")


def test_classify_new_cone_at_g(fig_tree):
    p = classify_point(fig_tree, ("c", "g", "r"), "a")
    assert p == SymbolicType1(II, CUT_RG, NewCone())
    assert sprout_of(p) == "g"


def test_classify_new_cone_at_p(fig_tree):
    p = classify_point(fig_tree, ("b", "g", "p", "r"), "a")
    assert p.kind == II
    assert p.cut == SymbolicCut("r<g<p", has_maximum=True, max_point="p")
    assert sprout_of(p) == "p"


def test_classify_realised(fig_tree):
    p = classify_point(fig_tree, ("c", "g", "r"), "c")
    assert p.kind == REALISED
    assert p.cut == SymbolicCut("r<g<c", has_maximum=True, max_point="c")
    assert p.cone is None


def test_classify_in_cone_from_above(fig_tree):
    # a sits above p, so the 1-type of p over {r, g, a} lands in a's cone
    p = classify_point(fig_tree, ("a", "g", "r"), "p")
    assert p == SymbolicType1(IB, CUT_RG, ExistingCone("a"))
    assert graft_of(p) == Graft("r<g", "a")


def test_classify_in_cone_branching(fig_tree):
    # b shares the cone of a at g but branches off at p, outside the base
    p = classify_point(fig_tree, ("b", "c", "g", "r"), "a")
    assert p == SymbolicType1(IIIB, CUT_RG, ExistingCone("b"))
    assert graft_of(p) == Graft("r<g", "b")


def test_classify_over_root_alone(fig_tree):
    p = classify_point(fig_tree, ("r",), "c")
    assert p == SymbolicType1(II, CUT_R, NewCone())


def test_classify_rejects_open_base(fig_tree):
    with pytest.raises(NonMeetClosedError):
        classify_point(fig_tree, ("a", "b", "g", "r"), "c")


def test_classify_rejects_rootless_base(fig_tree):
    with pytest.raises(ValueError, match="root"):
        classify_point(fig_tree, ("g", "p"), "a")


def test_classify_rejects_unknown_node(fig_tree):
    with pytest.raises(UnknownNodeError):
        classify_point(fig_tree, ("g", "r"), "zz")


def test_relate_identical_records():
    p = SymbolicType1(II, CUT_RG, NewCone())
    assert relate(p, p) == DOM_EQUIVALENT


def test_relate_cone_versus_new_cone():
    p = SymbolicType1(IB, CUT_RG, ExistingCone("a"))
    q = SymbolicType1(II, CUT_RG, NewCone())
    assert relate(p, q) == ORTHOGONAL
    assert relate(q, p) == ORTHOGONAL


def test_relate_branching_partner():
    p = SymbolicType1(IIIA, CUT_RG)
    q = SymbolicType1(IA, CUT_RG)
    assert relate(p, q) == DOM_EQUIVALENT
    assert is_equidominant(p, q) == "yes"


def test_relate_distinct_cuts():
    p = SymbolicType1(IA, CUT_RG)
    q = SymbolicType1(IA, CUT_R)
    assert relate(p, q) == ORTHOGONAL
    assert is_equidominant(p, q) == "no"


def test_relate_realised_absorbs():
    p = SymbolicType1(REALISED, CUT_R)
    q = SymbolicType1(II, CUT_RG, NewCone())
    assert relate(p, q) == REALISED_ABSORBED
    assert is_equidominant(p, q) == "no"


def test_equidominance_over_empty_cut_is_settled():
    p = SymbolicType1(IIIB, EMPTY_CUT)
    q = SymbolicType1(IB, EMPTY_CUT)
    assert relate(p, q) == DOM_EQUIVALENT
    assert is_equidominant(p, q) == "no"


def test_equidominance_in_a_named_cone_stays_open():
    p = SymbolicType1(IIIB, CUT_RG, ExistingCone("a"))
    q = SymbolicType1(IB, CUT_RG, ExistingCone("a"))
    assert relate(p, q) == DOM_EQUIVALENT
    assert is_equidominant(p, q) == "unknown"


def test_equidominant_to_itself():
    p = SymbolicType1(IIIB, CUT_RG, ExistingCone("a"))
    assert is_equidominant(p, p) == "yes"


def test_graft_and_sprout_guards():
    realised = SymbolicType1(REALISED, CUT_R)
    new_cone = SymbolicType1(II, CUT_RG, NewCone())
    in_cone = SymbolicType1(IB, CUT_RG, ExistingCone("a"))
    with pytest.raises(RealisedTypeError):
        graft_of(realised)
    with pytest.raises(RealisedTypeError):
        sprout_of(realised)
    with pytest.raises(ValueError, match="sprout"):
        graft_of(new_cone)
    with pytest.raises(ValueError, match="new-cone"):
        sprout_of(in_cone)
    assert graft_of(SymbolicType1(IA, EMPTY_CUT)) == Graft("empty", None)


def test_record_validation():
    with pytest.raises(ValueError):
        SymbolicType1("IV", CUT_R)
    with pytest.raises(ValueError):
        SymbolicType1(II, EMPTY_CUT, NewCone())
    with pytest.raises(ValueError):
        SymbolicType1(IB, CUT_RG, NewCone())
    with pytest.raises(ValueError):
        SymbolicType1(IA, CUT_RG, ExistingCone("a"))
    with pytest.raises(ValueError):
        SymbolicCut("bad", has_maximum=True)
    with pytest.raises(ValueError):
        SymbolicCut("bad", max_point="g")


CATALOG = symbolic_catalog(
    (
        CUT_R,
        CUT_RG,
        EMPTY_CUT,
        SymbolicCut("r<g<h", has_maximum=True, max_point="h"),
        SymbolicCut("omega", bounded=False),
    ),
    ("a", "b", "c"),
)


def test_catalog_sizes():
    # topped cut: Realised, Ia, IIIa, II, and Ib/IIIb per cone
    topped = [p for p in CATALOG if p.cut == CUT_RG]
    assert len(topped) == 4 + 2 * 3
    untopped = [p for p in CATALOG if p.cut == EMPTY_CUT]
    assert len(untopped) == 5
    assert all(p.kind in KINDS for p in CATALOG)
    assert len(set(CATALOG)) == len(CATALOG)


def test_verdict_trichotomy_on_catalog():
    for p, q in itertools.product(CATALOG, repeat=2):
        verdict = relate(p, q)
        assert verdict in (ORTHOGONAL, DOM_EQUIVALENT, REALISED_ABSORBED)
        assert verdict == relate(q, p)
        if p.kind == REALISED or q.kind == REALISED:
            assert verdict == REALISED_ABSORBED
        else:
            assert verdict != REALISED_ABSORBED
        assert is_equidominant(p, q) in ("yes", "no", "unknown")
        assert is_equidominant(p, q) == is_equidominant(q, p)


def test_dom_equivalence_is_an_equivalence():
    nonrealised = [p for p in CATALOG if p.kind != REALISED]
    for p in nonrealised:
        assert relate(p, p) == DOM_EQUIVALENT
    for p, q, s in itertools.product(nonrealised, repeat=3):
        if relate(p, q) == relate(q, s) == DOM_EQUIVALENT:
            assert relate(p, s) == DOM_EQUIVALENT


def test_equidominant_pairs_are_dom_equivalent():
    for p, q in itertools.product(CATALOG, repeat=2):
        if is_equidominant(p, q) == "yes" and REALISED not in (p.kind, q.kind):
            assert relate(p, q) == DOM_EQUIVALENT


def test_json_round_trip_on_catalog():
    for p in CATALOG:
        data = symtype_to_json(p)
        assert symtype_from_json(data) == p
        assert "max" not in data["cut"] or p.cut.has_maximum
        assert data["cut"].get("bounded", True) == p.cut.bounded


def test_json_round_trip_on_classified(fig_tree):
    for b in fig_tree.nodes:
        p = classify_point(fig_tree, ("c", "g", "r"), b)
        assert symtype_from_json(symtype_to_json(p)) == p


def _cut_points(p):
    return set(p.cut.id.split("<"))


def test_kind_resets_when_branch_point_enters_base(fig_tree):
    # the open cone at g holding a acquires a base point (b), then the
    # branch point p itself: in-cone status dissolves back to a new cone
    chain = (("g", "r"), ("b", "g", "r"), ("b", "g", "p", "r"))
    kinds = [classify_point(fig_tree, M, "a").kind for M in chain]
    assert kinds == [II, IIIB, II]


# growing meet-closed base chains never shrink the cut, never leave
# Realised, and move kinds forward while the cut maximum stands still
@settings(max_examples=150, deadline=None)
@given(st.data())
def test_growth_along_base_chains(data):
    n = data.draw(st.integers(min_value=2, max_value=10))
    t = random_tree(n, data.draw(st.integers(min_value=0, max_value=10**6)))
    b = data.draw(st.sampled_from(sorted(t.nodes)))
    root = t.root()
    M = {root}
    records = [classify_point(t, tuple(M), b)]
    pool = sorted(set(t.nodes) - M)
    while pool:
        extra = data.draw(st.sampled_from(pool))
        M = meet_closure(t, M | {extra})
        pool = sorted(set(t.nodes) - M)
        records.append(classify_point(t, tuple(sorted(M)), b))
    for before, after in zip(records, records[1:]):
        assert _cut_points(before) <= _cut_points(after)
        if before.kind == REALISED:
            assert after.kind == REALISED
        if before.cut.max_point == after.cut.max_point:
            assert (before.kind, after.kind) in (
                (REALISED, REALISED),
                (II, II),
                (II, IB),
                (II, IIIB),
                (IB, IB),
                (IIIB, IIIB),
            )
            if isinstance(before.cone, ExistingCone):
                g = before.cut.max_point
                assert cone_child(t, g, before.cone.id) == cone_child(
                    t, g, after.cone.id
                )
    assert records[-1].kind == REALISED


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=3, max_value=9),
    st.integers(min_value=0, max_value=10**6),
    st.sets(st.integers(min_value=0, max_value=8), max_size=4),
)
def test_record_is_a_type_invariant(n, seed, picks):
    t = random_tree(n, seed)
    names = sorted(t.nodes)
    chosen = {names[i % len(names)] for i in picks} | {t.root()}
    M = tuple(sorted(meet_closure(t, chosen)))
    by_type = {}
    for b in names:
        tp = qf_type_of(t, M, (b,))
        by_type.setdefault(tp, set()).add(classify_point(t, M, b))
    for group in by_type.values():
        assert len(group) == 1
