from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meettree import FormulaParseError
from meettree.formulas import (
    And,
    Cmp,
    Meet,
    Not,
    Or,
    Rel,
    constraints_to_text,
    params_of,
    parse_constraints,
    parse_formula,
    rels_of,
    term,
    to_text,
    vars_of,
)


def test_parse_flattens_meets():
    f = parse_formula("x ^ (c0 ^ c1) < c2")
    assert f == Cmp("<", term("x", "c0", "c1"), term("c2"))
    assert parse_formula("(x ^ c0) ^ c1 < c2") == f


def test_parse_precedence():
    f = parse_formula("!x < c & x = d | R(x, c)")
    assert isinstance(f, Or)
    assert isinstance(f.lhs, And)
    assert f.lhs.lhs == Not(Cmp("<", term("x"), term("c")))
    assert f.rhs == Rel("R", term("x"), term("c"))


def test_parse_parens_grouping():
    f = parse_formula("x < c & (x = d | x = e)")
    assert isinstance(f, And)
    assert isinstance(f.rhs, Or)


def test_parse_le():
    assert parse_formula("x <= c") == Cmp("<=", term("x"), term("c"))


def test_parse_meet_alias():
    assert parse_formula("x ⊓ c = d") == parse_formula("x ^ c = d")


def test_parse_errors_carry_position():
    with pytest.raises(FormulaParseError) as ei:
        parse_formula("x < ")
    assert ei.value.position == 4
    with pytest.raises(FormulaParseError):
        parse_formula("x1 < c")  # only bare x in formula mode
    with pytest.raises(FormulaParseError):
        parse_formula("x > c")  # > is constraint-only
    with pytest.raises(FormulaParseError):
        parse_formula("x < c extra")
    with pytest.raises(FormulaParseError):
        parse_formula("x # c")
    with pytest.raises(FormulaParseError):
        parse_formula("")


def test_parse_constraints_surface():
    atoms = parse_constraints("x > g, x^a = g, x^c = g")
    assert atoms[0] == Cmp("<", term("g"), term("x0"))
    assert atoms[1] == Cmp("=", term("x0", "a"), term("g"))
    assert atoms[2] == Cmp("=", term("x0", "c"), term("g"))


def test_parse_constraints_meet_symbol_alias():
    assert parse_constraints("x ⊓ a = g") == parse_constraints("x ^ a = g")


def test_parse_constraints_multi_var():
    atoms = parse_constraints("x0 ^ x1 < c, !R(x0, x1), x2 >= x0")
    assert atoms[0] == Cmp("<", term("x0", "x1"), term("c"))
    assert atoms[1] == Rel("R", term("x0"), term("x1"), holds=False)
    assert atoms[2] == Cmp("<=", term("x0"), term("x2"))


def test_parse_constraints_empty():
    assert parse_constraints("") == ()
    assert parse_constraints("   ") == ()


def test_constraint_negation_only_on_relations():
    with pytest.raises(FormulaParseError):
        parse_constraints("!x0 < c")


def test_collectors():
    f = parse_formula("R(x ^ c0, c1) & !S(x, x) | x < c2")
    assert params_of(f) == {"c0", "c1", "c2"}
    assert vars_of(f) == {"x"}
    assert rels_of(f) == {"R", "S"}


def test_term_str_orders_vars_first():
    assert str(term("c0", "x", "a")) == "x ^ a ^ c0"
    assert str(term("x1", "x0")) == "x0 ^ x1"


names = st.sampled_from(["c0", "c1", "d", "e'"])


@st.composite
def terms(draw, var="x"):
    gens = draw(st.sets(st.one_of(st.just(var), names), min_size=1, max_size=3))
    return Meet(frozenset(gens))


@st.composite
def formulas(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        if draw(st.booleans()):
            return Cmp(draw(st.sampled_from(["<", "<=", "="])), draw(terms()), draw(terms()))
        return Rel(draw(st.sampled_from(["R", "S"])), draw(terms()), draw(terms()))
    kind = draw(st.sampled_from(["not", "and", "or"]))
    if kind == "not":
        return Not(draw(formulas(depth=depth - 1)))
    node = And if kind == "and" else Or
    return node(draw(formulas(depth=depth - 1)), draw(formulas(depth=depth - 1)))


@given(formulas())
def test_print_parse_roundtrip(f):
    assert parse_formula(to_text(f)) == f


@st.composite
def constraint_lists(draw):
    out = []
    for _ in range(draw(st.integers(1, 4))):
        if draw(st.booleans()):
            out.append(
                Cmp(
                    draw(st.sampled_from(["<", "<=", "="])),
                    draw(terms(var="x0")),
                    draw(terms(var="x1")),
                )
            )
        else:
            out.append(
                Rel("R", draw(terms(var="x0")), draw(terms(var="x1")), draw(st.booleans()))
            )
    return tuple(out)


@given(constraint_lists())
def test_constraints_roundtrip(atoms):
    assert parse_constraints(constraints_to_text(atoms)) == atoms
