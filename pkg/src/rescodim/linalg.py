"""Exact rational linear algebra: elimination, spans, and strict feasibility.

Everything here works on tuples of :class:`fractions.Fraction` (ints are
accepted on input).  No floating point is used anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]
Matrix = List[List[Fraction]]

_SIGNS = {"<": -1, "=": 0, ">": 1, -1: -1, 0: 0, 1: 1}


def vec(xs: Iterable) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} != {len(y)}")
    total = Fraction(0)
    for a, b in zip(x, y):
        if a and b:
            total += a * b
    return total


def add(x: Sequence, y: Sequence) -> Vector:
    return tuple(Fraction(a) + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> Vector:
    return tuple(Fraction(a) - b for a, b in zip(x, y))


def scale(c, x: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def is_zero(x: Sequence) -> bool:
    return all(a == 0 for a in x)


def mat_vec(m: Sequence[Sequence], x: Sequence) -> Vector:
    return tuple(dot(row, x) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def row_reduce(rows: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` lies in the rational span of ``vectors``."""
    if is_zero(v):
        return True
    if not vectors:
        return False
    return rank(list(vectors)) == rank(list(vectors) + [list(v)])


def solve(a: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square nonsingular system ``a x = b``."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return tuple(red[i][n] for i in range(n))


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    red, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Basis of ``{x : rows . x = 0}``, one vector per free column."""
    red, pivots = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -red[r][f]
        basis.append(tuple(x))
    return basis


def primitive(v: Sequence) -> Vector:
    """Positive rescaling of ``v`` to coprime integer coordinates."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        return tuple(fr)
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints)


def _int_row(row: Sequence[Fraction]) -> Tuple[int, ...]:
    return tuple(int(x) for x in primitive(row))


def _eliminate(rows: List[Tuple[int, ...]], v: int) -> List[Tuple[int, ...]]:
    pos = [r for r in rows if r[v] > 0]
    neg = [r for r in rows if r[v] < 0]
    out = {r for r in rows if r[v] == 0}
    for p in pos:
        for n in neg:
            a, b = -n[v], p[v]
            comb = tuple(a * x + b * y for x, y in zip(p, n))
            g = 0
            for x in comb:
                g = gcd(g, x)
            out.add(tuple(x // g for x in comb) if g else comb)
    return sorted(out)


def strict_feasibility(constraints: Sequence[Tuple[Sequence, object]],
                       dim: Optional[int] = None) -> Optional[Vector]:
    """Find ``x`` with ``f_i . x`` of the demanded sign for every constraint.

    Each constraint is ``(f, sign)`` with sign one of ``"<"``, ``"="``,
    ``">"`` (or -1, 0, 1).  The system is homogeneous, so solutions form a
    cone; the witness returned is scaled to coprime integers.  Equalities
    are removed by parametrising their kernel, then the strict part is
    decided by Fourier-Motzkin elimination.  Returns ``None`` if infeasible.
    """
    if dim is None:
        if not constraints:
            raise ValueError("dimension required for an empty system")
        dim = len(constraints[0][0])
    eqs, strict = [], []
    for f, sign in constraints:
        f = vec(f)
        if len(f) != dim:
            raise ValueError("constraint dimension mismatch")
        s = _SIGNS[sign]
        if s == 0:
            eqs.append(f)
        else:
            strict.append(scale(s, f))
    basis = nullspace(eqs, dim) if eqs else [
        tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    k = len(basis)
    # strict rows in kernel coordinates: (f . basis_j)_j > 0
    rows = sorted({_int_row([dot(f, b) for b in basis]) for f in strict})
    if any(all(x == 0 for x in r) for r in rows):
        return None
    if k == 0:
        return tuple(Fraction(0) for _ in range(dim))

    stages: List[Tuple[int, List[Tuple[int, ...]]]] = []
    remaining = list(range(k))
    current = rows
    while remaining and current:
        def cost(v):
            p = sum(1 for r in current if r[v] > 0)
            n = sum(1 for r in current if r[v] < 0)
            return (p * n - p - n, v)
        v = min(remaining, key=cost)
        stages.append((v, current))
        current = _eliminate(current, v)
        remaining.remove(v)
        if any(all(x == 0 for x in r) for r in current):
            return None

    z = [Fraction(0)] * k
    for v, system in reversed(stages):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for r in system:
            if r[v] == 0:
                continue
            rest = sum((r[j] * z[j] for j in range(k) if j != v), Fraction(0))
            bound = -rest / r[v]
            if r[v] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            if not lo < hi:
                return None
            z[v] = (lo + hi) / 2
        elif lo is not None:
            z[v] = Fraction(int(lo // 1) + 1)
        elif hi is not None:
            z[v] = Fraction(-int((-hi) // 1) - 1)
        else:
            z[v] = Fraction(0)
    x = tuple(sum((z[j] * basis[j][i] for j in range(k)), Fraction(0)) for i in range(dim))
    if strict and is_zero(x):
        return None
    return primitive(x)


def satisfies(x: Sequence, constraints: Sequence[Tuple[Sequence, object]]) -> bool:
    """Exact substitution check for :func:`strict_feasibility` witnesses."""
    for f, sign in constraints:
        val = dot(f, x)
        s = _SIGNS[sign]
        if (s == 0 and val != 0) or (s > 0 and not val > 0) or (s < 0 and not val < 0):
            return False
    return True
