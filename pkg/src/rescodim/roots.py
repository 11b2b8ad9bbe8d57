"""Irreducible (restricted) root systems in exact ambient coordinates.

Roots are stored in the usual Bourbaki coordinate realizations: classical
families in ``e_i`` coordinates, ``G2`` in the sum-zero plane of Q^3,
``F4`` in Q^4, and ``E6``/``E7``/``E8`` inside the E8 lattice of Q^8.  The
non-reduced family ``BC`` uses ``{±e_i, ±2e_i, ±e_i±e_j}``.

The base is re-ordered after construction so that ``alpha_1`` is the end
node from which the averaging pipeline starts (see
:func:`_choose_first_simple_root`); coefficients over the base, heights,
coarse classes and the addition tables are derived views.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (AmbiguityError, DegenerateInputError, RankError,
                     SearchExhaustedError)
from .linalg import Vector

Functional = Vector
CartanElement = Vector

FAMILIES = ("A", "B", "C", "D", "BC", "E6", "E7", "E8", "F4", "G2")
_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "BC": 1}

# families whose averaging partner root is the highest root; the rest use
# the second-highest root
HIGHEST_ROOT_FAMILIES = frozenset({"A", "B", "D", "E6", "E7"})
SECOND_HIGHEST_FAMILIES = frozenset({"C", "BC", "E8", "F4", "G2"})


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise RankError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family in _FIXED_RANK:
            if self.rank != _FIXED_RANK[self.family]:
                raise RankError(f"{self.family} has rank fixed to {_FIXED_RANK[self.family]}, got {self.rank}")
        elif not isinstance(self.rank, int) or self.rank < _MIN_RANK[self.family]:
            raise RankError(f"{self.family} requires rank >= {_MIN_RANK[self.family]}, got {self.rank}")

    @property
    def label(self) -> str:
        return self.family if self.family in _FIXED_RANK else f"{self.family}{self.rank}"

    @property
    def reduced(self) -> bool:
        return self.family != "BC"

    @classmethod
    def parse(cls, text: str, rank: Optional[int] = None) -> "RootSystemType":
        """Parse ``"A3"``, ``"BC2"``, ``"E8"`` or ``("A", 3)`` style input."""
        text = text.strip().upper()
        if rank is not None:
            if text in ("E", "F", "G"):
                text = f"{text}{rank}"
            return cls(text, rank)
        if text in _FIXED_RANK:
            return cls(text, _FIXED_RANK[text])
        m = re.fullmatch(r"(BC|[A-D])(\d+)", text)
        if not m:
            m2 = re.fullmatch(r"([EFG])(\d+)", text)
            if m2:
                return cls(text, int(m2.group(2)))
            raise RankError(f"cannot parse root system type {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self):
        return self.label


def weyl_group_order(t: RootSystemType) -> int:
    n = t.rank
    if t.family == "A":
        return math.factorial(n + 1)
    if t.family in ("B", "C", "BC"):
        return 2 ** n * math.factorial(n)
    if t.family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}[t.family]


def classical_root_count(t: RootSystemType) -> int:
    n = t.rank
    return {
        "A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1),
        "BC": 2 * n * n + 2 * n, "E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12,
    }[t.family]


# ---------------------------------------------------------------------------
# ambient realizations (Bourbaki numbering of simple roots)

def _unit(n, *pairs) -> Vector:
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def _classical(family: str, n: int) -> Tuple[List[Vector], List[Vector]]:
    if family == "A":
        dim = n + 1
        roots = [_unit(dim, (i, 1), (j, -1)) for i in range(dim) for j in range(dim) if i != j]
        simple = [_unit(dim, (i, 1), (i + 1, -1)) for i in range(n)]
        return roots, simple
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            for si, sj in product((1, -1), repeat=2):
                roots.append(_unit(n, (i, si), (j, sj)))
    chain = [_unit(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    if family in ("B", "BC"):
        roots += [_unit(n, (i, s)) for i in range(n) for s in (1, -1)]
    if family in ("C", "BC"):
        roots += [_unit(n, (i, 2 * s)) for i in range(n) for s in (1, -1)]
    last = {
        "B": _unit(n, (n - 1, 1)),
        "BC": _unit(n, (n - 1, 1)),
        "C": _unit(n, (n - 1, 2)),
        "D": _unit(n, (n - 2, 1), (n - 1, 1)) if n >= 2 else None,
    }[family]
    return roots, chain + [last]


def _e8() -> Tuple[List[Vector], List[Vector]]:
    roots = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si, sj in product((1, -1), repeat=2):
                roots.append(_unit(8, (i, si), (j, sj)))
    half = Fraction(1, 2)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(half * s for s in signs))
    simple = [
        tuple(half * s for s in (1, -1, -1, -1, -1, -1, -1, 1)),
        _unit(8, (0, 1), (1, 1)),
        _unit(8, (0, -1), (1, 1)),
        _unit(8, (1, -1), (2, 1)),
        _unit(8, (2, -1), (3, 1)),
        _unit(8, (3, -1), (4, 1)),
        _unit(8, (4, -1), (5, 1)),
        _unit(8, (5, -1), (6, 1)),
    ]
    return roots, simple


def _f4() -> Tuple[List[Vector], List[Vector]]:
    roots = [_unit(4, (i, s)) for i in range(4) for s in (1, -1)]
    for i in range(4):
        for j in range(i + 1, 4):
            for si, sj in product((1, -1), repeat=2):
                roots.append(_unit(4, (i, si), (j, sj)))
    half = Fraction(1, 2)
    roots += [tuple(half * s for s in signs) for signs in product((1, -1), repeat=4)]
    simple = [
        _unit(4, (1, 1), (2, -1)),
        _unit(4, (2, 1), (3, -1)),
        _unit(4, (3, 1)),
        tuple(half * s for s in (1, -1, -1, -1)),
    ]
    return roots, simple


def _g2() -> Tuple[List[Vector], List[Vector]]:
    roots = []
    for i in range(3):
        for j in range(3):
            if i != j:
                roots.append(_unit(3, (i, 1), (j, -1)))
        others = [k for k in range(3) if k != i]
        roots.append(_unit(3, (i, 2), (others[0], -1), (others[1], -1)))
        roots.append(_unit(3, (i, -2), (others[0], 1), (others[1], 1)))
    simple = [_unit(3, (0, 1), (1, -1)), _unit(3, (0, -2), (1, 1), (2, 1))]
    return roots, simple


def _realize(t: RootSystemType) -> Tuple[List[Vector], List[Vector]]:
    if t.family in ("A", "B", "C", "D", "BC"):
        return _classical(t.family, t.rank)
    if t.family == "F4":
        return _f4()
    if t.family == "G2":
        return _g2()
    roots, simple = _e8()
    if t.family == "E8":
        return roots, simple
    # E6/E7: roots of E8 supported on the first 6/7 Bourbaki simple roots
    k = t.rank
    gram = [[linalg.dot(a, b) for b in simple] for a in simple]
    ginv = linalg.inverse(gram)
    sub = []
    for r in roots:
        c = linalg.mat_vec(ginv, [linalg.dot(r, a) for a in simple])
        if all(x == 0 for x in c[k:]):
            sub.append(r)
    return sub, simple[:k]


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoarseRoot:
    """A class of positively proportional roots (ratio 1/2, 1 or 2)."""

    index: int
    members: Tuple[int, ...]
    representative: int


@dataclass(frozen=True)
class WeylElement:
    """Product of simple reflections; ``word`` is applied left to right.

    Indices in ``word`` are 1-based simple-root labels.  ``matrix`` acts on
    ambient coordinates and equals ``s_{word[-1]} ... s_{word[0]}``.
    """

    word: Tuple[int, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def apply(self, v: Sequence) -> Vector:
        return linalg.mat_vec(self.matrix, v)

    def inverse(self, rs: "RootSystem") -> "WeylElement":
        return rs.weyl_element(tuple(reversed(self.word)))

    @property
    def is_identity(self) -> bool:
        return not self.word


@dataclass(frozen=True, eq=False)
class RootSystem:
    type: RootSystemType
    ambient_dim: int
    roots: Tuple[Vector, ...]
    coeffs: Tuple[Tuple[int, ...], ...]
    npos: int
    base: Tuple[Vector, ...]
    bourbaki_labels: Tuple[int, ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    _gram_inv: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    _index: Dict[Tuple[int, ...], int] = field(repr=False)
    sum_table: Tuple[Tuple[int, ...], ...] = field(repr=False)
    classes: Tuple[CoarseRoot, ...] = field(repr=False)
    class_of: Tuple[int, ...] = field(repr=False)
    npos_classes: int = 0

    # -- basic views -------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def family(self) -> str:
        return self.type.family

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def simple(self) -> Tuple[int, ...]:
        """Root indices of alpha_1..alpha_l (they lead the positive roots)."""
        return tuple(range(self.rank))

    @property
    def positives(self) -> range:
        return range(self.npos)

    @property
    def negatives(self) -> range:
        return range(self.npos, 2 * self.npos)

    def neg(self, i: int) -> int:
        return i + self.npos if i < self.npos else i - self.npos

    def height(self, i: int) -> int:
        return sum(self.coeffs[i])

    def is_positive(self, i: int) -> bool:
        return i < self.npos

    def index_of_coeffs(self, c: Sequence[int]) -> Optional[int]:
        return self._index.get(tuple(c))

    def index_of(self, v: Sequence) -> Optional[int]:
        """Root index of an ambient vector, or None if it is not a root."""
        c = self.pi_coords(v)
        if any(x.denominator != 1 for x in c):
            return None
        i = self._index.get(tuple(int(x) for x in c))
        if i is None or tuple(self.roots[i]) != tuple(linalg.vec(v)):
            return None
        return i

    def root_sum(self, i: int, j: int) -> int:
        """Index of root_i + root_j, or -1."""
        return self.sum_table[i][j]

    def neg_class(self, c: int) -> int:
        return c + self.npos_classes if c < self.npos_classes else c - self.npos_classes

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    # -- functionals on a --------------------------------------------------
    def pairings(self, f: Sequence) -> Vector:
        return tuple(linalg.dot(f, a) for a in self.base)

    def pi_coords(self, f: Sequence) -> Vector:
        """Coefficients over the base of the projection of ``f`` onto span(roots)."""
        return linalg.mat_vec(self._gram_inv, self.pairings(f))

    def project(self, f: Sequence) -> Vector:
        return self._combine(self.pi_coords(f))

    def is_zero_functional(self, f: Sequence) -> bool:
        return all(x == 0 for x in self.pairings(f))

    def cartan_from_values(self, y: Sequence) -> CartanElement:
        """The element s of span(roots) with alpha_i(s) = y_i."""
        return self._combine(linalg.mat_vec(self._gram_inv, y))

    def _combine(self, c: Sequence) -> Vector:
        out = [Fraction(0)] * self.ambient_dim
        for ci, a in zip(c, self.base):
            if ci:
                for k, x in enumerate(a):
                    out[k] += ci * x
        return tuple(out)

    def cartan_feasible(self, constraints: Sequence[Tuple[Sequence, object]]) -> Optional[CartanElement]:
        """Strict feasibility over the Cartan space span(roots).

        Constraints are ambient functionals with a sign; the search runs in
        the coordinates ``y_i = alpha_i(s)`` so that positive roots have
        nonnegative coefficients, which keeps Fourier-Motzkin small.
        """
        rows = [(self.pi_coords(f), sign) for f, sign in constraints]
        y = linalg.strict_feasibility(rows, dim=self.rank)
        if y is None:
            return None
        return linalg.primitive(self._combine(linalg.mat_vec(self._gram_inv, y)))

    def root_feasible(self, constraints: Sequence[Tuple[int, object]]) -> Optional[CartanElement]:
        """Same as :meth:`cartan_feasible` for constraints given as root indices."""
        rows = [(self.coeffs[i], sign) for i, sign in constraints]
        y = linalg.strict_feasibility(rows, dim=self.rank)
        if y is None:
            return None
        return linalg.primitive(self._combine(linalg.mat_vec(self._gram_inv, y)))

    # -- Weyl group -----------------------------------------------------------
    def reflection_matrix(self, j: int) -> Tuple[Tuple[Fraction, ...], ...]:
        """Matrix of the simple reflection s_j (1-based)."""
        a = self.base[j - 1]
        aa = linalg.dot(a, a)
        n = self.ambient_dim
        return tuple(tuple(Fraction(int(r == c)) - 2 * a[r] * a[c] / aa for c in range(n))
                     for r in range(n))

    def weyl_element(self, word: Sequence[int]) -> WeylElement:
        m = linalg.identity(self.ambient_dim)
        for j in word:
            m = linalg.mat_mul(self.reflection_matrix(j), m)
        return WeylElement(tuple(word), tuple(tuple(r) for r in m))

    @property
    def weyl_order(self) -> int:
        return weyl_group_order(self.type)

    def reflect_index(self, j: int, i: int) -> int:
        """Root index of s_j(root_i) (j is 1-based)."""
        return _reflection_perms(self)[j - 1][i]

    # -- distinguished roots ---------------------------------------------------
    def highest_root(self) -> int:
        return highest_root(self)

    def __repr__(self):
        return f"RootSystem({self.type.label}, roots={len(self.roots)})"


@lru_cache(maxsize=None)
def _reflection_perms(rs: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    perms = []
    for j in range(rs.rank):
        # s_j(beta) = beta - <beta, alpha_j^vee> alpha_j, computed via gram
        gjj = rs.gram[j][j]
        p = []
        for c in rs.coeffs:
            pair = sum((c[k] * rs.gram[k][j] for k in range(rs.rank)), Fraction(0))
            n = 2 * pair / gjj
            new = list(c)
            new[j] -= int(n)
            p.append(rs._index[tuple(new)])
        perms.append(tuple(p))
    return tuple(perms)


def _coeff_view(roots, simple):
    # clear denominators once so the per-root work is integer arithmetic
    den = math.lcm(*(Fraction(x).denominator for v in list(roots) + list(simple) for x in v))
    iroots = [[int(x * den) for x in r] for r in roots]
    isimple = [[int(x * den) for x in a] for a in simple]
    ginv = linalg.inverse([[sum(p * q for p, q in zip(a, b)) for b in isimple] for a in isimple])
    scale = math.lcm(*(x.denominator for row in ginv for x in row))
    m = [[int(x * scale) for x in row] for row in ginv]
    out = []
    for r, ir in zip(roots, iroots):
        pair = [sum(p * q for p, q in zip(ir, a)) for a in isimple]
        num = [sum(x * y for x, y in zip(row, pair)) for row in m]
        if any(x % scale for x in num):
            raise AssertionError(f"root {r} has non-integral base coefficients")
        ci = tuple(x // scale for x in num)
        recon = [sum(c * a[k] for c, a in zip(ci, isimple)) for k in range(len(ir))]
        if recon != ir:
            raise AssertionError(f"root {r} not in the span of the base")
        if not (all(x >= 0 for x in ci) or all(x <= 0 for x in ci)):
            raise AssertionError(f"root {r} has mixed-sign base coefficients {ci}")
        out.append(ci)
    return out


def _root_string(coeff_set, start: Tuple[int, ...], target: Tuple[int, ...],
                 steps: Sequence[int]) -> Optional[List[Tuple[int, ...]]]:
    """BFS in the root poset from ``start`` to ``target`` adding simple roots in ``steps``."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == target:
            path = [cur]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for j in steps:
            nxt = list(cur)
            nxt[j] += 1
            nxt = tuple(nxt)
            if nxt in coeff_set and nxt not in prev and all(a <= b for a, b in zip(nxt, target)):
                prev[nxt] = cur
                queue.append(nxt)
    return None


def _partner_root(family: str, coeffs: List[Tuple[int, ...]]) -> Tuple[int, ...]:
    pos = [c for c in coeffs if all(x >= 0 for x in c)]
    top = max(sum(c) for c in pos)
    delta = [c for c in pos if sum(c) == top]
    if family in HIGHEST_ROOT_FAMILIES:
        return delta[0]
    second = [c for c in pos if sum(c) == top - 1]
    if len(second) != 1:
        raise AmbiguityError(f"{family}: {len(second)} roots of height {top - 1}")
    return second[0]


def _choose_first_simple_root(family: str, coeffs: List[Tuple[int, ...]], rank: int) -> int:
    """Pick which Bourbaki simple root plays alpha_1.

    A candidate k qualifies when the partner root b (highest or second
    highest, by family) satisfies: b + alpha_j is not a root for j != k,
    and a chain of roots leads from alpha_k to b adding only alpha_j,
    j != k.  The first qualifying index in Bourbaki order wins.
    """
    if rank == 1:
        return 0
    b = _partner_root(family, coeffs)
    cset = set(coeffs)
    for k in range(rank):
        if b[k] != 1:
            continue
        bumped = (tuple(x + (i == j) for i, x in enumerate(b)) for j in range(rank) if j != k)
        if any(c in cset for c in bumped):
            continue
        start = tuple(int(i == k) for i in range(rank))
        if _root_string(cset, start, b, [j for j in range(rank) if j != k]) is not None:
            return k
    raise AssertionError(f"{family}: no simple root satisfies the partner-root properties")


@lru_cache(maxsize=None)
def build_root_system(t: RootSystemType) -> RootSystem:
    """Construct the root system of type ``t`` with its oriented base."""
    if not isinstance(t, RootSystemType):
        raise TypeError("expected a RootSystemType")
    roots, simple = _realize(t)
    if len(set(roots)) != len(roots):
        raise AssertionError("duplicate roots")
    coeffs = _coeff_view(roots, simple)
    k = _choose_first_simple_root(t.family, coeffs, t.rank)
    order = list(range(t.rank))
    if k == t.rank - 1:
        order.reverse()
    elif k != 0:
        order = [k] + [i for i in order if i != k]
    base = [simple[i] for i in order]
    coeffs = [tuple(c[i] for i in order) for c in coeffs]

    pos = [(c, r) for c, r in zip(coeffs, roots) if all(x >= 0 for x in c)]
    pos.sort(key=lambda cr: (sum(cr[0]), tuple(-x for x in cr[0])))
    npos = len(pos)
    ordered = pos + [(tuple(-x for x in c), tuple(-x for x in r)) for c, r in pos]
    if len(ordered) != len(roots):
        raise AssertionError("roots are not split into positives and negatives")
    coeffs_t = tuple(c for c, _ in ordered)
    roots_t = tuple(r for _, r in ordered)
    index = {c: i for i, c in enumerate(coeffs_t)}

    # linear integer keys: coefficients are below 16 in absolute value even for
    # sums of two roots, so key(a + b) = key(a) + key(b) is collision-free
    keys = [sum(x << (5 * k) for k, x in enumerate(c)) for c in coeffs_t]
    by_key = {kk: i for i, kk in enumerate(keys)}
    table = [tuple(by_key.get(ka + kb, -1) for kb in keys) for ka in keys]

    # coarse classes: representative is the member whose half is not a root
    class_of = [-1] * len(coeffs_t)
    classes: List[CoarseRoot] = []

    def _half(c):
        if all(x % 2 == 0 for x in c):
            return index.get(tuple(x // 2 for x in c))
        return None

    reps = [i for i in range(len(coeffs_t)) if _half(coeffs_t[i]) is None]
    pos_reps = [i for i in reps if i < npos]
    neg_reps = [i + npos for i in pos_reps]
    for i in pos_reps + neg_reps:
        members = [i]
        dbl = index.get(tuple(2 * x for x in coeffs_t[i]))
        if dbl is not None:
            members.append(dbl)
        cid = len(classes)
        for m in members:
            class_of[m] = cid
        classes.append(CoarseRoot(cid, tuple(members), i))
    if -1 in class_of:
        raise AssertionError("coarse classes do not partition the roots")

    gram = [[linalg.dot(a, b) for b in base] for a in base]
    return RootSystem(
        type=t,
        ambient_dim=len(roots[0]),
        roots=roots_t,
        coeffs=coeffs_t,
        npos=npos,
        base=tuple(base),
        bourbaki_labels=tuple(i + 1 for i in order),
        gram=tuple(tuple(r) for r in gram),
        _gram_inv=tuple(tuple(r) for r in linalg.inverse(gram)),
        _index=index,
        sum_table=tuple(table),
        classes=tuple(classes),
        class_of=tuple(class_of),
        npos_classes=len(pos_reps),
    )


def root_system(spec, rank: Optional[int] = None) -> RootSystem:
    """Convenience: ``root_system("A", 3)``, ``root_system("E8")``."""
    if isinstance(spec, RootSystemType):
        return build_root_system(spec)
    return build_root_system(RootSystemType.parse(spec, rank))


# ---------------------------------------------------------------------------
# operations

def coarse_classes(rs: RootSystem) -> Tuple[CoarseRoot, ...]:
    return rs.classes


def highest_root(rs: RootSystem) -> int:
    """Index of the unique maximal root; dominance is checked, not assumed."""
    top = max(rs.positives, key=rs.height)
    c = rs.coeffs[top]
    for i in rs.positives:
        if not all(a <= b for a, b in zip(rs.coeffs[i], c)):
            raise AmbiguityError(f"{rs.type}: highest root does not dominate root {rs.coeffs[i]}")
    return top


def second_highest_root(rs: RootSystem) -> int:
    """Index of the unique root of height ht(delta) - 1."""
    h = rs.height(highest_root(rs)) - 1
    cands = [i for i in rs.positives if rs.height(i) == h]
    if len(cands) != 1 or h < 1:
        raise AmbiguityError(f"{rs.type}: {len(cands)} roots of height {h}; second-highest root is not unique")
    return cands[0]


def partner_root(rs: RootSystem) -> int:
    """Highest root for A/B/D/E6/E7, second-highest for C/BC/E8/F4/G2."""
    if rs.family in HIGHEST_ROOT_FAMILIES:
        return highest_root(rs)
    return second_highest_root(rs)


def root_string(rs: RootSystem, start: int, end: int,
                steps: Optional[Sequence[int]] = None) -> Optional[List[int]]:
    """Chain of roots from ``start`` to ``end`` adding simple roots ``steps``.

    ``steps`` are 1-based simple labels; the default is alpha_2..alpha_l.
    """
    if steps is None:
        steps = range(2, rs.rank + 1)
    path = _root_string(set(rs.coeffs), rs.coeffs[start], rs.coeffs[end], [j - 1 for j in steps])
    if path is None:
        return None
    return [rs._index[c] for c in path]


def simple_reflection(rs: RootSystem, j: int, f: Sequence) -> Functional:
    """Image of an ambient functional under the simple reflection s_j (1-based)."""
    a = rs.base[j - 1]
    f = linalg.vec(f)
    n = 2 * linalg.dot(f, a) / linalg.dot(a, a)
    return linalg.sub(f, linalg.scale(n, a))


def outside_lower_span(rs: RootSystem, f: Sequence) -> bool:
    """Whether ``f`` (restricted to the Cartan space) is outside span(alpha_2..alpha_l).

    Equivalent to a nonzero pairing with the fundamental coweight dual to alpha_1.
    """
    return rs.pi_coords(f)[0] != 0


def weyl_orbit_search(rs: RootSystem, f: Sequence,
                      predicate: Callable[[Vector], bool],
                      cap: Optional[int] = None) -> WeylElement:
    """Breadth-first search of the Weyl orbit of ``f`` for an image satisfying ``predicate``.

    Returns the first element found (words ordered by length, then by
    reflection index).  The number of orbit points visited is capped at the
    Weyl group order.
    """
    f = linalg.vec(f)
    if rs.is_zero_functional(f):
        raise DegenerateInputError("functional is zero on the Cartan space")
    if cap is None:
        cap = rs.weyl_order
    start = rs.project(f)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        g, word = queue.popleft()
        if predicate(g):
            return rs.weyl_element(word)
        for j in range(1, rs.rank + 1):
            h = simple_reflection(rs, j, g)
            if h not in seen:
                if len(seen) >= cap:
                    break
                seen.add(h)
                queue.append((h, word + (j,)))
    raise SearchExhaustedError(
        f"{rs.type}: predicate unsatisfied after visiting {len(seen)} orbit points (cap {cap})")


def dynkin_edges(rs: RootSystem) -> List[Tuple[int, int, int]]:
    """(i, j, bond multiplicity) for adjacent simple roots, 1-based."""
    edges = []
    for i in range(rs.rank):
        for j in range(i + 1, rs.rank):
            g = rs.gram[i][j]
            if g != 0:
                aij = 2 * g / rs.gram[i][i]
                aji = 2 * g / rs.gram[j][j]
                edges.append((i + 1, j + 1, int(aij * aji)))
    return edges


def cartan_matrix(rs: RootSystem) -> List[List[int]]:
    return [[int(2 * rs.gram[i][j] / rs.gram[j][j]) for j in range(rs.rank)] for i in range(rs.rank)]
