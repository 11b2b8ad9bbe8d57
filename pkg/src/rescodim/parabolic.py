"""Standard parabolics, resonant codimension, and the parabolicity criterion.

Subalgebras containing the Cartan part are modelled by the set of coarse
classes whose root spaces they contain; a bracket of root spaces is taken
to be nonzero exactly when the sum of the roots is a root.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, Iterable, List, Tuple, Union

from . import kernels
from .errors import CapabilityError
from .roots import RootSystem, _reflection_perms

ENUMERATION_MAX_RANK = 3


@dataclass(frozen=True)
class SaturatedSubalgebra:
    """Cartan part plus the root spaces of ``classes`` (coarse-class ids)."""

    rs: RootSystem = field(repr=False, compare=False)
    classes: FrozenSet[int]

    @property
    def root_set(self) -> FrozenSet[int]:
        return frozenset(m for c in self.classes for m in self.rs.classes[c].members)

    @property
    def is_closed(self) -> bool:
        return kernels.is_closed(self.rs, self.classes)

    @property
    def is_everything(self) -> bool:
        return len(self.classes) == self.rs.nclasses

    def __contains__(self, cls_id: int) -> bool:
        return cls_id in self.classes

    @classmethod
    def generated_by(cls, rs: RootSystem, classes: Iterable[int]) -> "SaturatedSubalgebra":
        return cls(rs, kernels.close_classes(rs, classes))


@dataclass(frozen=True)
class ParabolicSubalgebra:
    """The standard parabolic built from ``levi`` (1-based simple labels).

    Its roots are the positive roots together with the negative roots in
    the span of ``levi``; excluding a single simple root gives a maximal
    parabolic.
    """

    rs: RootSystem = field(repr=False, compare=False)
    levi: FrozenSet[int]
    root_set: FrozenSet[int]

    @property
    def classes(self) -> FrozenSet[int]:
        return frozenset(self.rs.class_of[i] for i in self.root_set)

    def as_saturated(self) -> SaturatedSubalgebra:
        return SaturatedSubalgebra(self.rs, self.classes)


Subalgebra = Union[SaturatedSubalgebra, ParabolicSubalgebra, Iterable[int]]


def _class_set(h: Subalgebra) -> FrozenSet[int]:
    if isinstance(h, (SaturatedSubalgebra, ParabolicSubalgebra)):
        return h.classes
    return frozenset(h)


def standard_parabolic(rs: RootSystem, levi: Iterable[int]) -> ParabolicSubalgebra:
    levi = frozenset(levi)
    if not levi <= set(range(1, rs.rank + 1)):
        raise ValueError(f"simple labels must lie in 1..{rs.rank}, got {sorted(levi)}")
    outside = [j - 1 for j in range(1, rs.rank + 1) if j not in levi]
    roots = set(rs.positives)
    for i in rs.negatives:
        if all(rs.coeffs[i][k] == 0 for k in outside):
            roots.add(i)
    return ParabolicSubalgebra(rs, levi, frozenset(roots))


def maximal_parabolic(rs: RootSystem, j: int) -> ParabolicSubalgebra:
    """The parabolic whose Levi part omits alpha_j."""
    return standard_parabolic(rs, set(range(1, rs.rank + 1)) - {j})


def resonant_codimension(rs: RootSystem, h: Subalgebra) -> int:
    """Number of coarse classes whose root spaces are not contained in ``h``."""
    return rs.nclasses - len(_class_set(h))


def maximal_parabolic_table(rs: RootSystem) -> List[Tuple[int, int]]:
    return [(j, resonant_codimension(rs, maximal_parabolic(rs, j))) for j in range(1, rs.rank + 1)]


def minimal_resonant_codimension(rs: RootSystem) -> int:
    # monotone under inclusion, so maximal parabolics suffice
    return min(rc for _, rc in maximal_parabolic_table(rs))


def parabolic_codimension(rs: RootSystem, j: int) -> int:
    """Root-count codimension of the maximal parabolic omitting alpha_j.

    Equals the real codimension when every root space is one-dimensional
    (split real forms).
    """
    return sum(1 for i in rs.positives if rs.coeffs[i][j - 1] > 0)


# ---------------------------------------------------------------------------
# parabolicity for some base

@lru_cache(maxsize=None)
def weyl_permutations(rs: RootSystem, limit: int = 100_000) -> Tuple[Tuple[int, ...], ...]:
    """The Weyl group as permutations of root indices (small ranks only)."""
    if rs.weyl_order > limit:
        raise CapabilityError(f"{rs.type}: Weyl group of order {rs.weyl_order} is too large to enumerate")
    gens = _reflection_perms(rs)
    ident = tuple(range(len(rs.roots)))
    seen = {ident}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for g in gens:
            gw = tuple(g[i] for i in w)
            if gw not in seen:
                seen.add(gw)
                queue.append(gw)
    if len(seen) != rs.weyl_order:
        raise AssertionError(f"{rs.type}: generated {len(seen)} elements, expected {rs.weyl_order}")
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def all_base_parabolics(rs: RootSystem) -> FrozenSet[FrozenSet[int]]:
    """Class sets of every parabolic standard for some base (Weyl images of standard ones)."""
    if rs.rank > ENUMERATION_MAX_RANK:
        raise CapabilityError(
            f"{rs.type}: exhaustive base enumeration is limited to rank <= {ENUMERATION_MAX_RANK}; "
            "use method='halfspace'")
    standard = []
    labels = range(1, rs.rank + 1)
    for k in range(rs.rank + 1):
        for levi in combinations(labels, k):
            standard.append(standard_parabolic(rs, levi).root_set)
    out = set()
    for w in weyl_permutations(rs):
        for roots in standard:
            out.add(frozenset(rs.class_of[w[i]] for i in roots))
    return frozenset(out)


def contains_positive_system(rs: RootSystem, h: Subalgebra):
    """Cartan witness s with beta(s) < 0 for every class outside ``h``, or None.

    Such an s can be perturbed to a regular element whose positive system
    lies inside ``h``.
    """
    classes = _class_set(h)
    outside = [rs.classes[c].representative for c in range(rs.nclasses) if c not in classes]
    if not outside:
        return rs.cartan_from_values([0] * rs.rank)
    return rs.root_feasible([(b, "<") for b in outside])


def is_parabolic_for_some_base(rs: RootSystem, h: Subalgebra, method: str = "auto") -> bool:
    """Whether ``h`` equals a standard parabolic for some base of ``rs``.

    ``method='enumerate'`` compares against the Weyl images of every standard
    parabolic (rank <= 3); ``method='halfspace'`` tests closure plus
    containment of a positive system via strict feasibility.  Sets that are
    not addition-closed are never parabolic.
    """
    classes = _class_set(h)
    if not kernels.is_closed(rs, classes):
        return False
    if method == "auto":
        method = "enumerate" if rs.rank <= ENUMERATION_MAX_RANK else "halfspace"
    if method == "enumerate":
        return classes in all_base_parabolics(rs)
    if method == "halfspace":
        return contains_positive_system(rs, classes) is not None
    raise ValueError(f"unknown method {method!r}")


def is_symmetric_cover(rs: RootSystem, h: Subalgebra) -> bool:
    """Whether every class or its negative lies in ``h``."""
    classes = _class_set(h)
    return all(c in classes or rs.neg_class(c) in classes for c in range(rs.nclasses))


@dataclass
class Prop25Report:
    """Outcome of the exhaustive small-codimension parabolicity check."""

    type: str
    nclasses: int
    r: int
    subsets_in_space: int
    examined: int
    confirmed: int
    counterexamples: List[FrozenSet[int]]
    saturated_by_type: bool = True

    @property
    def ok(self) -> bool:
        return not self.counterexamples and self.confirmed == self.examined


def verify_prop25(rs: RootSystem, backend=None) -> Prop25Report:
    """Check every closed class subset of resonant codimension <= r is parabolic.

    Only rank <= 3 is supported.  Subsets are coarse-class subsets, so in
    type BC a class is always included with both of its roots.
    """
    if rs.rank > ENUMERATION_MAX_RANK:
        raise CapabilityError(f"{rs.type}: exhaustive verification is limited to rank <= {ENUMERATION_MAX_RANK}")
    r = minimal_resonant_codimension(rs)
    n = rs.nclasses
    count, masks = kernels.scan_closed(rs, n - r, backend)
    parabolics = all_base_parabolics(rs)
    confirmed, bad = 0, []
    for mask in masks:
        classes = frozenset(i for i in range(n) if mask >> i & 1)
        if classes in parabolics:
            confirmed += 1
        else:
            bad.append(classes)
    return Prop25Report(str(rs.type), n, r, 2 ** n, count, confirmed, bad)
