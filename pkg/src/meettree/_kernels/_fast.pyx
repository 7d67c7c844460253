# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tree kernels. Contract mirrors `_ref` exactly."""

from array import array

from cpython.array cimport array as carray, clone

EQ = 0
LT = 1
GT = 2
INC = 3

BACKEND = "cython"

cdef carray _int_template = array("i", [])


cdef inline int _lca(const int[:] parent, const int[:] depth, int a, int b) nogil:
    while depth[a] > depth[b]:
        a = parent[a]
    while depth[b] > depth[a]:
        b = parent[b]
    while a != b:
        a = parent[a]
        b = parent[b]
    return a


def lca(const int[:] parent, const int[:] depth, int a, int b):
    return _lca(parent, depth, a, b)


def is_le(const int[:] parent, const int[:] depth, int a, int b):
    if depth[a] > depth[b]:
        return False
    while depth[b] > depth[a]:
        b = parent[b]
    return a == b


def rel_code(const int[:] parent, const int[:] depth, int a, int b):
    if a == b:
        return EQ
    cdef int m = _lca(parent, depth, a, b)
    if m == a:
        return LT
    if m == b:
        return GT
    return INC


def closure_set(const int[:] parent, const int[:] depth, seeds):
    cdef carray work = clone(_int_template, 0, False)
    cdef set present = set()
    cdef int x, m
    cdef Py_ssize_t i, j
    for x in sorted(set(seeds)):
        present.add(x)
        work.append(x)
    i = 0
    while i < len(work):
        x = work.data.as_ints[i]
        for j in range(i):
            m = _lca(parent, depth, x, work.data.as_ints[j])
            if m not in present:
                present.add(m)
                work.append(m)
        i += 1
    return array("i", sorted(present))


def lca_table(const int[:] parent, const int[:] depth, int n):
    cdef carray out = clone(_int_template, n * n, True)
    cdef int[:] view = out
    cdef int i, j, m
    with nogil:
        for i in range(n):
            view[i * n + i] = i
            for j in range(i + 1, n):
                m = _lca(parent, depth, i, j)
                view[i * n + j] = m
                view[j * n + i] = m
    return out
