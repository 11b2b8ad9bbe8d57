"""Backend selection for the hot loops, plus the class-level tables they consume.

The Cython extension is used when it has been built; otherwise the
pure-Python implementations are imported.  Both expose the same functions
and produce identical results.
"""
from array import array
from functools import lru_cache

try:
    from ._kernels import closure as _closure, scan_closed as _scan_closed
    BACKEND = "cython"
except ImportError:  # extension not built
    from ._kernels_py import closure as _closure, scan_closed as _scan_closed
    BACKEND = "python"

from . import _kernels_py


def backends():
    """Mapping of available backend name to module."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out


@lru_cache(maxsize=None)
def class_triples(rs):
    """Sorted (a, b, c): some member of class a plus some member of class b is a root in class c.

    Pairs summing to zero are omitted, as are triples where c is a or b
    (those can never witness a failure of closure).
    """
    out = set()
    for i in range(len(rs.roots)):
        for j in range(i, len(rs.roots)):
            k = rs.sum_table[i][j]
            if k < 0:
                continue
            a, b, c = rs.class_of[i], rs.class_of[j], rs.class_of[k]
            if c in (a, b):
                continue
            out.add((min(a, b), max(a, b), c))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def class_adjacency(rs):
    n = rs.nclasses
    adj = [[] for _ in range(n)]
    for a, b, c in class_triples(rs):
        adj[a].append((b, c))
        if a != b:
            adj[b].append((a, c))
    offsets, partner, result = array("i", [0]), array("i"), array("i")
    for row in adj:
        for b, c in sorted(set(row)):
            partner.append(b)
            result.append(c)
        offsets.append(len(partner))
    return offsets, partner, result


def close_classes(rs, classes, backend=None):
    """Addition closure of a set of coarse-class ids; returns a frozenset."""
    member = bytearray(rs.nclasses)
    for c in classes:
        member[c] = 1
    fn = _closure if backend is None else backend.closure
    out = fn(member, *class_adjacency(rs))
    return frozenset(i for i, x in enumerate(out) if x)


def is_closed(rs, classes):
    s = set(classes)
    return all(not (a in s and b in s) or c in s for a, b, c in class_triples(rs))


def scan_closed(rs, min_size=0, backend=None):
    """All addition-closed class subsets of ``rs`` with at least ``min_size`` classes."""
    fn = _scan_closed if backend is None else backend.scan_closed
    return fn(rs.nclasses, class_triples(rs), min_size)
