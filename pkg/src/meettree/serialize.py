"""JSON and DOT interchange for trees and decorated structures.

The JSON shape is {"nodes": [...], "parent": {...}, "base": [...]} with
an optional "relations" block for decorated structures; the root is
omitted from the parent map (null is accepted on import). Export is
canonical: nodes sorted, relation pairs sorted, so equal structures
serialize to equal documents. Import validates and refuses anything the
validators would flag.

DOT output draws one directed edge per non-root node toward its parent
and marks base nodes as triangles.
"""

from __future__ import annotations

from .errors import InvalidTreeError
from .expansion import ExpandedStructure, Signature, validate_expansion
from .qftype import structure_tree
from .tree import MeetTree, validate

__all__ = ["structure_to_json", "structure_from_json", "to_dot"]


def structure_to_json(N) -> dict:
    t = structure_tree(N)
    nodes = sorted(t.nodes)
    out = {
        "nodes": nodes,
        "parent": {n: t.parent[n] for n in nodes if t.parent.get(n) is not None},
        "base": sorted(t.base),
    }
    if hasattr(N, "facts"):
        out["relations"] = {
            sym: sorted([a, b] for a, b in pairs) for sym, pairs in N.facts
        }
        directed = sorted(N.signature.directed)
        if directed:
            out["directed"] = directed
    return out


def structure_from_json(data):
    if not isinstance(data, dict) or "nodes" not in data:
        raise ValueError("malformed structure document: no node list")
    try:
        nodes = list(data["nodes"])
        parent_in = dict(data.get("parent") or {})
        base = tuple(data.get("base") or ())
        stray = set(parent_in) - set(nodes)
        if stray:
            raise ValueError(f"parent entries for unknown nodes: {sorted(stray)}")
        parent = {n: parent_in.get(n) for n in nodes}
        t = MeetTree(nodes, parent, base)
    except (TypeError, ValueError, AttributeError) as exc:
        raise ValueError(f"malformed structure document: {exc}") from None
    bad = validate(t)
    if bad is not None:
        raise InvalidTreeError(bad)
    if "relations" not in data:
        return t
    try:
        rels = dict(data["relations"])
        sig = Signature(tuple(rels), frozenset(data.get("directed") or ()))
        facts = {
            sym: frozenset((a, b) for a, b in pairs) for sym, pairs in rels.items()
        }
        s = ExpandedStructure(t, sig, facts)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed structure document: {exc}") from None
    bad = validate_expansion(s)
    if bad is not None:
        raise InvalidTreeError(bad)
    return s


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(N) -> str:
    t = structure_tree(N)
    base = set(t.base)
    lines = ["digraph meettree {"]
    for n in sorted(t.nodes):
        shape = "triangle" if n in base else "ellipse"
        lines.append(f"  {_quote(n)} [shape={shape}];")
    for n in sorted(t.nodes):
        p = t.parent.get(n)
        if p is not None:
            lines.append(f"  {_quote(n)} -> {_quote(p)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
