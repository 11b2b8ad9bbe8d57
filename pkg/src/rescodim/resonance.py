"""Resonance of roots with fiberwise exponents and the resulting invariance verdict.

Exponents are supplied as ambient functionals; only their restriction to
the Cartan space matters.  A root is resonant with an exponent when it is a
positive multiple of it, and resonance is constant on coarse classes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from . import linalg
from .errors import FalsificationError, HypothesisError
from .parabolic import (SaturatedSubalgebra, is_parabolic_for_some_base,
                        minimal_resonant_codimension, resonant_codimension)
from .roots import CartanElement, Functional, RootSystem


class Verdict(enum.Enum):
    FULLY_INVARIANT = "FullyInvariant"
    VOLUME_CONTRADICTION = "VolumeContradiction"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ExponentSet:
    exponents: Tuple[Functional, ...]
    dim_m: int
    volume_preserving: bool = False

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(linalg.vec(f) for f in self.exponents))
        if self.dim_m < 1:
            raise HypothesisError(f"dim_m must be positive, got {self.dim_m}")
        if len(self.exponents) > self.dim_m:
            raise HypothesisError(
                f"{len(self.exponents)} exponents exceed dim_m = {self.dim_m}")


@dataclass(frozen=True)
class OutcomeReport:
    resonant_classes: FrozenSet[int]
    nonresonant_subalgebra: SaturatedSubalgebra
    verdict: Verdict
    witness: Optional[CartanElement] = None
    r: int = 0
    note: str = field(default="", compare=False)


@lru_cache(maxsize=None)
def _direction_table(rs: RootSystem) -> Dict[Tuple[int, ...], int]:
    """Primitive base-coefficient direction of each root -> its class."""
    return {tuple(int(x) for x in linalg.primitive(c)): rs.class_of[i] for i, c in enumerate(rs.coeffs)}


def resonant_class(rs: RootSystem, f: Sequence) -> Optional[int]:
    """The coarse class positively proportional to ``f``, if any."""
    c = rs.pi_coords(f)
    if all(x == 0 for x in c):
        return None
    return _direction_table(rs).get(tuple(int(x) for x in linalg.primitive(c)))


def positively_proportional(rs: RootSystem, f: Sequence, root: int) -> bool:
    """Exact test of ``f = c * root`` with ``c > 0`` on the Cartan space."""
    fc = rs.pi_coords(f)
    rc = rs.coeffs[root]
    k = next(i for i, x in enumerate(rc) if x != 0)
    c = fc[k] / rc[k]
    return c > 0 and all(a == c * b for a, b in zip(fc, rc))


def resonant_roots(rs: RootSystem, exps: ExponentSet) -> FrozenSet[int]:
    out = set()
    for f in exps.exponents:
        c = resonant_class(rs, f)
        if c is not None:
            out.add(c)
    return frozenset(out)


def nonresonant_subalgebra(rs: RootSystem, exps: ExponentSet) -> SaturatedSubalgebra:
    """Subalgebra generated by the non-resonant coarse root spaces."""
    res = resonant_roots(rs, exps)
    return SaturatedSubalgebra.generated_by(rs, (c for c in range(rs.nclasses) if c not in res))


def dimension_hypothesis(r: int, dim_m: int, volume_preserving: bool) -> bool:
    return dim_m < r or (dim_m == r and volume_preserving)


def classify_outcome(rs: RootSystem, exps: ExponentSet) -> OutcomeReport:
    """Combine non-resonant invariance with the parabolicity and zero-sum arguments.

    * closure of the non-resonant classes is everything -> FullyInvariant;
    * otherwise, without ``dim_m < r`` or ``dim_m == r`` plus volume
      preservation -> Inconclusive;
    * otherwise the closure must be a proper parabolic of codimension
      exactly r, and a Cartan element on which every excluded root (hence
      every exponent) is negative certifies VolumeContradiction.

    Any failure of the expected combinatorics raises FalsificationError.
    """
    r = minimal_resonant_codimension(rs)
    res = resonant_roots(rs, exps)
    h = nonresonant_subalgebra(rs, exps)
    if h.is_everything:
        return OutcomeReport(res, h, Verdict.FULLY_INVARIANT, None, r)
    if not dimension_hypothesis(r, exps.dim_m, exps.volume_preserving):
        if exps.dim_m > r:
            why = f"dim_m = {exps.dim_m} > r = {r}"
        else:
            why = f"dim_m = {exps.dim_m} = r = {r} without volume preservation"
        return OutcomeReport(res, h, Verdict.INCONCLUSIVE, None, r, why)

    codim = resonant_codimension(rs, h)
    if codim > exps.dim_m:
        raise FalsificationError(
            f"closure misses {codim} classes but at most {exps.dim_m} are resonant", h.classes)
    if not is_parabolic_for_some_base(rs, h):
        raise FalsificationError("non-resonant closure of small codimension is not parabolic", h.classes)
    if exps.dim_m < r:
        raise FalsificationError(
            f"proper parabolic of resonant codimension {codim} < r = {r}", h.classes)

    excluded = [c for c in range(rs.nclasses) if c not in h.classes]
    s = rs.root_feasible([(rs.classes[c].representative, "<") for c in excluded])
    if s is None:
        raise FalsificationError("no Cartan element is negative on every excluded class", h.classes)
    for f in exps.exponents:
        c = resonant_class(rs, f)
        if c is None or c in h.classes:
            raise FalsificationError(f"exponent {f} is not proportional to an excluded root", h.classes)
        if not linalg.dot(f, s) < 0:
            raise FalsificationError(f"exponent {f} is not negative on the witness", h.classes)
    return OutcomeReport(res, h, Verdict.VOLUME_CONTRADICTION, s, r,
                         "all exponents negative on the witness, contradicting zero sum")
