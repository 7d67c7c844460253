"""Pure-Python tree kernels.

Same contract as the compiled module `_fast`: nodes are integer indices,
`parent` maps each index to its parent index (-1 for the root), `depth`
holds root distances. All functions assume a valid single-rooted tree.
"""

from __future__ import annotations

from array import array

EQ = 0
LT = 1
GT = 2
INC = 3

BACKEND = "python"


def lca(parent, depth, a: int, b: int) -> int:
    while depth[a] > depth[b]:
        a = parent[a]
    while depth[b] > depth[a]:
        b = parent[b]
    while a != b:
        a = parent[a]
        b = parent[b]
    return a


def is_le(parent, depth, a: int, b: int) -> bool:
    # a <= b iff a is an ancestor-or-self of b.
    if depth[a] > depth[b]:
        return False
    while depth[b] > depth[a]:
        b = parent[b]
    return a == b


def rel_code(parent, depth, a: int, b: int) -> int:
    if a == b:
        return EQ
    m = lca(parent, depth, a, b)
    if m == a:
        return LT
    if m == b:
        return GT
    return INC


def closure_set(parent, depth, seeds) -> array:
    """Meet-closure of the seed indices, returned sorted."""
    present = set(seeds)
    work = sorted(present)
    i = 0
    while i < len(work):
        x = work[i]
        for j in range(i):
            m = lca(parent, depth, x, work[j])
            if m not in present:
                present.add(m)
                work.append(m)
        i += 1
    return array("i", sorted(present))


def lca_table(parent, depth, n: int) -> array:
    """Flattened n*n meet table; entry i*n+j is lca(i, j)."""
    out = array("i", bytes(4 * n * n))
    for i in range(n):
        out[i * n + i] = i
        for j in range(i + 1, n):
            m = lca(parent, depth, i, j)
            out[i * n + j] = m
            out[j * n + i] = m
    return out
