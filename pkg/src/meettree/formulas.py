"""Quantifier-free formula and constraint ASTs, parser, printer.

Two surface languages share one tokenizer and term grammar:

* formulas (one free variable ``x``): terms ``x | <ident> | t ^ t``,
  atoms ``t < t | t <= t | t = t | <Rel>(t, t)``, connectives ``!``,
  ``&``, ``|`` and parentheses; ``^`` binds tighter than comparisons.
* constraint lists (variables ``x0, x1, ...``; bare ``x`` means ``x0``):
  comma-separated atoms, additionally allowing ``>``, ``>=`` (normalized
  by swapping) and a leading ``!`` on relation atoms.

``⊓`` is accepted as an alias for ``^``. Meet terms are flattened to
their generator set, so ``x ^ (c0 ^ c1)`` and ``(x ^ c0) ^ c1`` are the
same term. Identifiers of the shape ``x<digits>`` are reserved for
variables; everything else names a parameter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import FormulaParseError

_VAR_RE = re.compile(r"x[0-9]*\Z")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<op><=|>=|[<>=^(),!&|])"
    r"|(?P<meet>⊓))"
)


def is_var(name: str) -> bool:
    return _VAR_RE.match(name) is not None


def gen_sort_key(name: str):
    """Variables first (numerically), then parameters lexicographically."""
    if is_var(name):
        return (0, int(name[1:] or 0), "")
    return (1, 0, name)


@dataclass(frozen=True)
class Meet:
    """A term: the meet of its generators (variables and parameter names)."""

    gens: frozenset

    def __post_init__(self):
        if not self.gens:
            raise ValueError("empty term")

    def __str__(self):
        return " ^ ".join(sorted(self.gens, key=gen_sort_key))


def term(*gens: str) -> Meet:
    return Meet(frozenset(gens))


@dataclass(frozen=True)
class Cmp:
    op: str  # "<" | "<=" | "="
    lhs: Meet
    rhs: Meet

    def __str__(self):
        return f"{self.lhs} {self.op} {self.rhs}"


@dataclass(frozen=True)
class Rel:
    name: str
    lhs: Meet
    rhs: Meet
    holds: bool = True

    def __str__(self):
        bang = "" if self.holds else "!"
        return f"{bang}{self.name}({self.lhs}, {self.rhs})"


Atom = Union[Cmp, Rel]


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


Formula = Union[Cmp, Rel, Not, And, Or]


def _walk_terms(f) -> Iterator[Meet]:
    if isinstance(f, (Cmp, Rel)):
        yield f.lhs
        yield f.rhs
    elif isinstance(f, Not):
        yield from _walk_terms(f.arg)
    elif isinstance(f, (And, Or)):
        yield from _walk_terms(f.lhs)
        yield from _walk_terms(f.rhs)
    else:
        raise TypeError(f"not a formula: {f!r}")


def params_of(f) -> frozenset:
    return frozenset(g for t in _walk_terms(f) for g in t.gens if not is_var(g))


def vars_of(f) -> frozenset:
    return frozenset(g for t in _walk_terms(f) for g in t.gens if is_var(g))


def rels_of(f) -> frozenset:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Rel):
            out.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, (And, Or)):
            stack.extend((g.lhs, g.rhs))
    return frozenset(out)


# -- tokenizer ---------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks = []  # (kind, value, position)
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                if text[pos:].strip() == "":
                    break
                raise FormulaParseError(f"unexpected character {text[pos]!r}", pos)
            if m.group("ident"):
                self.toks.append(("ident", m.group("ident"), m.start("ident")))
            elif m.group("meet"):
                self.toks.append(("op", "^", m.start("meet")))
            else:
                self.toks.append(("op", m.group("op"), m.start("op")))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise FormulaParseError(f"expected {op!r}", pos)

    def fail(self, msg: str):
        raise FormulaParseError(msg, self.peek()[2])


class _Parser:
    """Recursive descent; `multi_var` switches constraint-mode extensions on."""

    def __init__(self, text: str, multi_var: bool):
        self.toks = _Tokens(text)
        self.multi_var = multi_var

    # term := factor (^ factor)*    factor := ident | ( term )
    def term(self) -> Meet:
        gens = set(self.factor())
        while self.toks.peek()[:2] == ("op", "^"):
            self.toks.next()
            gens |= self.factor()
        return Meet(frozenset(gens))

    def factor(self) -> frozenset:
        kind, val, pos = self.toks.next()
        if kind == "ident":
            if is_var(val):
                if not self.multi_var and val != "x":
                    raise FormulaParseError("only the free variable 'x' is allowed here", pos)
                if self.multi_var and val == "x":
                    val = "x0"
            return frozenset([val])
        if (kind, val) == ("op", "("):
            gens = self.term().gens
            self.toks.expect_op(")")
            return gens
        raise FormulaParseError("expected a term", pos)

    def atom_after_term(self, lhs: Meet) -> Cmp:
        kind, op, pos = self.toks.next()
        if kind != "op" or op not in ("<", "<=", "=", ">", ">="):
            raise FormulaParseError("expected a comparison", pos)
        if op in (">", ">="):
            if not self.multi_var:
                raise FormulaParseError(f"{op!r} is not in the formula grammar", pos)
            return Cmp("<" if op == ">" else "<=", self.term(), lhs)
        return Cmp(op, lhs, self.term())

    def rel_or_cmp(self, holds: bool = True) -> Atom:
        kind, val, pos = self.toks.peek()
        after = self.toks.toks[self.toks.i + 1][:2] if self.toks.i + 1 < len(self.toks.toks) else None
        if kind == "ident" and not is_var(val) and after == ("op", "("):
            self.toks.next()
            self.toks.expect_op("(")
            lhs = self.term()
            self.toks.expect_op(",")
            rhs = self.term()
            self.toks.expect_op(")")
            return Rel(val, lhs, rhs, holds)
        if not holds:
            self.toks.fail("'!' before an atom only negates a relation")
        return self.atom_after_term(self.term())

    # formula := disj    disj := conj (| conj)*    conj := unit (& unit)*
    def formula(self):
        f = self.conj()
        while self.toks.peek()[:2] == ("op", "|"):
            self.toks.next()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unit()
        while self.toks.peek()[:2] == ("op", "&"):
            self.toks.next()
            f = And(f, self.unit())
        return f

    def unit(self):
        kind, val, pos = self.toks.peek()
        if (kind, val) == ("op", "!"):
            self.toks.next()
            return Not(self.unit())
        if (kind, val) == ("op", "("):
            # parens may wrap a formula or a term; try formula first
            save = self.toks.i
            try:
                self.toks.next()
                f = self.formula()
                self.toks.expect_op(")")
                if self.toks.peek()[:2] == ("op", "^") or (
                    self.toks.peek()[0] == "op"
                    and self.toks.peek()[1] in ("<", "<=", "=", ">", ">=")
                ):
                    raise FormulaParseError("term context", pos)
                return f
            except FormulaParseError:
                self.toks.i = save
        return self.rel_or_cmp()

    def constraint_atom(self) -> Atom:
        if self.toks.peek()[:2] == ("op", "!"):
            self.toks.next()
            return self.rel_or_cmp(holds=False)
        return self.rel_or_cmp()


def parse_formula(text: str) -> Formula:
    p = _Parser(text, multi_var=False)
    f = p.formula()
    kind, val, pos = p.toks.peek()
    if kind is not None:
        raise FormulaParseError(f"trailing input {val!r}", pos)
    return f


def parse_constraints(text: str) -> tuple:
    """Comma-separated constraint atoms; empty text means no constraints."""
    if not text.strip():
        return ()
    p = _Parser(text, multi_var=True)
    out = [p.constraint_atom()]
    while p.toks.peek()[:2] == ("op", ","):
        p.toks.next()
        out.append(p.constraint_atom())
    kind, val, pos = p.toks.peek()
    if kind is not None:
        raise FormulaParseError(f"trailing input {val!r}", pos)
    return tuple(out)


# -- printing ----------------------------------------------------------------


def to_text(f) -> str:
    return _print(f, 0)


def _print(f, level: int) -> str:
    # levels: 0 = or, 1 = and, 2 = not/atom
    if isinstance(f, Or):
        s = f"{_print(f.lhs, 0)} | {_print(f.rhs, 1)}"
        return f"({s})" if level > 0 else s
    if isinstance(f, And):
        s = f"{_print(f.lhs, 1)} & {_print(f.rhs, 2)}"
        return f"({s})" if level > 1 else s
    if isinstance(f, Not):
        return f"!{_print(f.arg, 2)}"
    if isinstance(f, (Cmp, Rel)):
        return str(f)
    raise TypeError(f"not a formula: {f!r}")


def constraints_to_text(atoms) -> str:
    return ", ".join(str(a) for a in atoms)
