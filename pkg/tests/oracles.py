"""Independent reference computations used by the tests.

Nothing here imports the package.  Root sets are generated by closing a
hand-written list of simple roots under reflections; parabolicity uses the
closed-and-symmetric-cover characterization; strict feasibility uses a
floating-point LP.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

F = Fraction
H = Fraction(1, 2)


def e(n, *pairs):
    v = [F(0)] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def simple_roots(family, rank):
    """Bourbaki-ordered simple roots in the standard coordinates."""
    n = rank
    if family == "A":
        return [e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if family in ("B", "C", "D", "BC"):
        out = [e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        if family in ("B", "BC"):
            out.append(e(n, (n - 1, 1)))
        elif family == "C":
            out.append(e(n, (n - 1, 2)))
        else:
            out.append(e(n, (n - 2, 1), (n - 1, 1)))
        return out
    if family in ("E6", "E7", "E8"):
        a1 = (H, -H, -H, -H, -H, -H, -H, H)
        rest = [e(8, (0, 1), (1, 1))] + [e(8, (i, -1), (i + 1, 1)) for i in range(6)]
        return ([a1] + rest)[:rank]
    if family == "F4":
        return [e(4, (1, 1), (2, -1)), e(4, (2, 1), (3, -1)), e(4, (3, 1)), (H, -H, -H, -H)]
    if family == "G2":
        return [e(3, (0, 1), (1, -1)), e(3, (0, -2), (1, 1), (2, 1))]
    raise ValueError(family)


def dot(x, y):
    return sum((a * b for a, b in zip(x, y)), F(0))


def reflect(v, a):
    c = 2 * dot(v, a) / dot(a, a)
    return tuple(x - c * y for x, y in zip(v, a))


def reflection_closure(family, rank):
    """All roots: orbit of the simple roots (plus 2*alpha_l for BC) under the simple reflections."""
    simple = simple_roots(family, rank)
    seeds = list(simple)
    if family == "BC":
        seeds.append(tuple(2 * x for x in simple[-1]))
    seen = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                w = reflect(v, a)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def coefficients(v, simple):
    """Exact coordinates of v over the simple roots (least squares then exact check)."""
    m = np.array([[float(x) for x in a] for a in simple]).T
    sol = np.linalg.lstsq(m, np.array([float(x) for x in v]), rcond=None)[0]
    c = [int(round(x)) for x in sol]
    back = tuple(sum((ci * a[k] for ci, a in zip(c, simple)), F(0)) for k in range(len(v)))
    assert back == tuple(v), (v, c)
    return tuple(c)


def highest(roots, simple):
    coeffs = [coefficients(r, simple) for r in roots]
    pos = [c for c in coeffs if all(x >= 0 for x in c)]
    top = max(pos, key=sum)
    return top, sorted(c for c in pos if sum(c) == sum(top) - 1)


def vector_closure(vectors, roots):
    """Close a set of root vectors under addition within ``roots``."""
    s = set(vectors)
    changed = True
    while changed:
        changed = False
        for a in list(s):
            for b in list(s):
                c = tuple(x + y for x, y in zip(a, b))
                if c in roots and c not in s:
                    s.add(c)
                    changed = True
    return s


def is_closed(vectors, roots):
    s = set(vectors)
    return all(tuple(x + y for x, y in zip(a, b)) not in roots or tuple(x + y for x, y in zip(a, b)) in s
               for a in s for b in s)


def parabolic_by_cover(vectors, roots):
    """Closed subsets with P u -P = all roots are exactly the parabolic subsets."""
    s = set(vectors)
    return is_closed(s, roots) and all(r in s or tuple(-x for x in r) in s for r in roots)


def lp_strictly_feasible(rows, signs):
    """Float LP: maximize t with sign_i * (f_i . x) >= t, |x_k| <= 1; feasible iff t* > 0 (or no strict rows)."""
    n = len(rows[0])
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for f, s in zip(rows, signs):
        f = [float(x) for x in f]
        if s == 0:
            A_eq.append(f + [0.0])
            b_eq.append(0.0)
        else:
            A_ub.append([-s * x for x in f] + [1.0])
            b_ub.append(0.0)
    if not A_ub:
        return True
    res = linprog(c=[0.0] * n + [-1.0], A_ub=A_ub, b_ub=b_ub, A_eq=A_eq or None, b_eq=b_eq or None,
                  bounds=[(-1, 1)] * n + [(None, 1)], method="highs")
    return res.status == 0 and -res.fun > 1e-9


def closed_subsets_bruteforce(classes, roots):
    """All unions of coarse classes (lists of vectors) that are addition-closed.

    Backtracking over include/exclude decisions; a branch is cut as soon as
    two included classes have a sum in an excluded class.
    """
    n = len(classes)
    where = {v: i for i, c in enumerate(classes) for v in c}
    sums = set()
    for i in range(n):
        for j in range(i, n):
            for a in classes[i]:
                for b in classes[j]:
                    c = tuple(x + y for x, y in zip(a, b))
                    if c in roots:
                        sums.add((i, j, where[c]))
    by_last = [[] for _ in range(n)]
    for i, j, k in sums:
        by_last[max(i, j, k)].append((i, j, k))
    out = []
    state = [False] * n

    def go(pos):
        if pos == n:
            out.append(frozenset(i for i in range(n) if state[i]))
            return
        for choice in (False, True):
            state[pos] = choice
            if all(not (state[i] and state[j]) or state[k] for i, j, k in by_last[pos]):
                go(pos + 1)
        state[pos] = False

    go(0)
    return out
