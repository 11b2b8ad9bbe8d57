# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: addition closure and closed-subset scans.

Mirrors ``_kernels_py`` exactly; ``rescodim.kernels`` picks whichever
imports.
"""
from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long)


def closure(const unsigned char[:] member, const int[:] offsets, const int[:] partner, const int[:] result):
    """Close a 0/1 membership vector under the class addition relation.

    ``offsets``/``partner``/``result`` are a CSR encoding: for class ``a``,
    entries ``offsets[a]:offsets[a+1]`` list pairs (b, c) with a + b -> c.
    """
    cdef Py_ssize_t n = member.shape[0]
    cdef unsigned char *mem = <unsigned char *> malloc(n + 1)
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef Py_ssize_t i, top = 0
    cdef int a, c, e
    if mem == NULL or stack == NULL:
        free(mem)
        free(stack)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                mem[i] = 1 if member[i] else 0
                if mem[i]:
                    stack[top] = <int> i
                    top += 1
            while top > 0:
                top -= 1
                a = stack[top]
                for e in range(offsets[a], offsets[a + 1]):
                    c = result[e]
                    if mem[partner[e]] and not mem[c]:
                        mem[c] = 1
                        stack[top] = c
                        top += 1
        return PyBytes_FromStringAndSize(<char *> mem, n)
    finally:
        free(mem)
        free(stack)


def scan_closed(int n, triples, int min_size):
    """Enumerate addition-closed subsets of ``n`` classes with at least ``min_size`` members.

    ``triples`` is a sequence of (i, j, k): classes i and j sum into k.
    Returns ``(count, masks)`` with masks as ints, ascending.
    """
    if n > 62:
        raise ValueError("scan_closed supports at most 62 classes")
    cdef Py_ssize_t t = len(triples)
    cdef unsigned long long *need = <unsigned long long *> malloc((t + 1) * sizeof(unsigned long long))
    cdef unsigned long long *target = <unsigned long long *> malloc((t + 1) * sizeof(unsigned long long))
    cdef unsigned long long mask, total = (<unsigned long long> 1) << n
    cdef Py_ssize_t q
    cdef bint ok
    cdef long count = 0
    out = []
    try:
        for q in range(t):
            i, j, k = triples[q]
            need[q] = ((<unsigned long long> 1) << i) | ((<unsigned long long> 1) << j)
            target[q] = (<unsigned long long> 1) << k
        for mask in range(total):
            if __builtin_popcountll(mask) < min_size:
                continue
            ok = True
            for q in range(t):
                if (mask & need[q]) == need[q] and not (mask & target[q]):
                    ok = False
                    break
            if ok:
                count += 1
                out.append(mask)
        return count, out
    finally:
        free(need)
        free(target)
