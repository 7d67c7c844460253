from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meettree import (
    DTR,
    Above,
    And,
    ExpandedStructure,
    InCutBelow,
    MeetTree,
    NewConeAbove,
    Or,
    UnknownNodeError,
    decorate_random,
    enumerate_extensions,
    generic_point_types,
    meet_closure,
    parse_constraints,
    parse_formula,
    qftype_from_json,
    random_tree,
    tame_check,
    tame_report,
    tame_search,
)

EQ, LT, GT, INC = "EQ", "LT", "GT", "INCOMPARABLE"

FIG_R = frozenset(
    {("a", "c"), ("c", "a"), ("b", "c"), ("c", "b"), ("p", "c"), ("c", "p")}
)


@pytest.fixture
def fig_dtr(fig_tree):
    return ExpandedStructure(fig_tree, DTR, {"R": FIG_R})


def tix(tp, *gens):
    return tp.terms.index(frozenset(gens))


# -- generic one-point types --------------------------------------------------


def test_single_structure_above_root():
    one = ExpandedStructure(MeetTree(["r"], {"r": None}), DTR, {})
    types = generic_point_types(one, Above("r"))
    assert len(types) == 1
    tp = types[0]
    assert tp.rel_at(tix(tp, "x0"), tix(tp, "r")) == GT
    # nothing is incomparable above the root, so no facts anywhere
    assert not any(any(table) for _, table in tp.facts)


def test_new_cone_above_g_branches_facts(fig_dtr):
    types = generic_point_types(fig_dtr, NewConeAbove("g"))
    assert len(types) == 4
    seen = set()
    for tp in types:
        i = tix(tp, "x0")
        assert tp.rel_at(i, tix(tp, "g")) == GT
        assert tp.rel_at(tix(tp, "x0", "a"), tix(tp, "g")) == EQ
        seen.add((tp.fact_at("R", i, tix(tp, "a")), tp.fact_at("R", i, tix(tp, "c"))))
    assert seen == {(False, False), (False, True), (True, False), (True, True)}


def test_above_a_facts_forced_by_cone(fig_dtr):
    types = generic_point_types(fig_dtr, Above("a"))
    assert len(types) == 1
    tp = types[0]
    assert tp.fact_at("R", tix(tp, "x0"), tix(tp, "c")) is True
    assert tp.fact_at("R", tix(tp, "x0"), tix(tp, "b")) is False


def test_in_cut_below_pure(fig_tree):
    types = generic_point_types(fig_tree, InCutBelow("a"))
    assert len(types) == 4  # below r, inside r-g, g-p, p-a
    for tp in types:
        i = tix(tp, "x0")
        assert tp.rel_at(i, tix(tp, "a")) == LT
        assert all(tp.rel_at(i, tix(tp, m)) != EQ for m in tp.base)


def test_generic_excludes_realized_points(fig_tree):
    generic = generic_point_types(fig_tree, Above("g"))
    raw = enumerate_extensions(fig_tree, 1, parse_constraints("x > g"), budget=2)
    # p, a, b, c sit strictly above g and are exactly the realized answers
    assert len(raw) - len(generic) == 4
    for tp in generic:
        i = tix(tp, "x0")
        assert tp.rel_at(i, tix(tp, "g")) == GT
        assert all(tp.rel_at(i, tix(tp, m)) != EQ for m in tp.base)


def test_position_validation(fig_dtr):
    with pytest.raises(UnknownNodeError):
        generic_point_types(fig_dtr, Above("zz"))
    with pytest.raises(TypeError):
        generic_point_types(fig_dtr, "above r")


# -- the tameness criterion ---------------------------------------------------


def test_tame_verdicts_for_the_three_fixtures(fig_dtr):
    assert tame_check(fig_dtr, "R(x, c)", ()) is None
    assert tame_check(fig_dtr, "!R(x, c)", ("c",)) is None
    assert tame_check(fig_dtr, "R(x ^ a, x ^ c)", ("a", "c")) is None


def test_tame_counterexample_cites_failing_position(fig_dtr):
    cx = tame_check(fig_dtr, "!R(x, c)", ())
    assert cx is not None
    assert cx.point == "g"  # satisfies the formula, but a above it does not
    bad = cx.bad
    assert bad.rel_at(tix(bad, "x0"), tix(bad, "a")) == EQ


def test_tame_search_minimal_witnesses(fig_dtr):
    assert tame_search(fig_dtr, "R(x, c)") == ()
    assert tame_search(fig_dtr, "!R(x, c)") == ("c",)
    assert tame_search(fig_dtr, "!R(x, a)") == ("a",)
    # both arguments of R sit below x, hence are comparable: never satisfiable
    assert tame_search(fig_dtr, "R(x ^ a, x ^ c)") == ()
    assert tame_search(fig_dtr, "R(x, x ^ c)") == ()


def test_tame_search_on_order_atoms(fig_tree, fig_dtr):
    assert tame_search(fig_tree, "x <= p") == ("p",)
    assert tame_search(fig_tree, "x < c") == ("c",)
    assert tame_search(fig_dtr, "x <= p") == ("p",)


def test_tame_witnesses_union_for_connectives(fig_dtr):
    texts = ["R(x, c)", "!R(x, c)", "x <= p", "x < c", "R(x, a)", "!R(x, b)"]
    fs = [parse_formula(s) for s in texts]
    ds = [tame_search(fig_dtr, f) for f in fs]
    for f, df in zip(fs, ds):
        for g, dg in zip(fs, ds):
            union = tuple(sorted(set(df) | set(dg)))
            assert tame_check(fig_dtr, And(f, g), union) is None
            assert tame_check(fig_dtr, Or(f, g), union) is None


def test_atomic_witnesses_stay_in_parameter_closure(fig_dtr):
    atoms = {
        "x < c": {"c"},
        "x <= c": {"c"},
        "x = g": {"g"},
        "R(x, c)": {"c"},
        "!R(x, c)": {"c"},
        "R(c, x)": {"c"},
        "!R(x, a)": {"a"},
        "R(x ^ a, x ^ c)": {"a", "c"},
        "!R(x ^ a, x ^ c)": {"a", "c"},
        "R(x ^ c, x)": {"c"},
    }
    for text, params in atoms.items():
        closure = meet_closure(fig_dtr.tree, params)
        assert set(tame_search(fig_dtr, text)) <= closure


def test_tame_report_modes(fig_dtr):
    rep = tame_report(fig_dtr, "!R(x, c)")
    assert rep == {"witness": ["c"], "checked": 3, "counterexample": None}
    rep = tame_report(fig_dtr, "!R(x, c)", D=())
    assert rep["witness"] == []
    cx = rep["counterexample"]
    assert cx["point"] == "g"
    bad = qftype_from_json(cx["type"])
    assert bad.rel_at(tix(bad, "x0"), tix(bad, "a")) == EQ


# -- random decorated structures ----------------------------------------------


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6), st.data())
def test_atoms_are_tame_on_random_decorations(n, seed, data):
    t = random_tree(n, seed)
    s = decorate_random(t, DTR, 0.5, seed + 1)
    m = data.draw(st.sampled_from(sorted(t.nodes)))
    # a positive fact propagates upward, a negative one is cut off at m
    assert tame_check(s, f"R(x, {m})", ()) is None
    assert tame_check(s, f"!R(x, {m})", (m,)) is None
