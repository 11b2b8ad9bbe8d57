"""Critical dimensions of semisimple groups described by their restricted root systems.

``r`` and ``v`` are computed from root data; ``n(G)`` and ``d(G)`` are only
known from a small table of split classical families, against which the
computed values are cross-checked.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import (FalsificationError, HypothesisError, OutOfTableError,
                     UndefinedQuantityError)
from .parabolic import minimal_resonant_codimension, parabolic_codimension
from .roots import RootSystemType, root_system

_FACTOR = re.compile(r"(BC|[A-G])(\d+)(\*?)")


@dataclass(frozen=True)
class Factor:
    type: RootSystemType
    compact: bool = False

    def __str__(self):
        return self.type.label + ("*" if self.compact else "")


@dataclass(frozen=True)
class GroupSpec:
    """Simple factors of a semisimple group, each flagged compact or not."""

    factors: Tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise HypothesisError("a group spec needs at least one factor")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``"A3,A1*"``: comma-separated ``<family><rank>``, ``*`` marks compact."""
        factors = []
        for part in text.split(","):
            part = part.strip().upper()
            m = _FACTOR.fullmatch(part)
            if not m:
                raise HypothesisError(f"cannot parse factor {part!r}; expected e.g. A3, BC2, E8 or A1*")
            fam, rank = m.group(1), int(m.group(2))
            if fam in ("E", "F", "G"):
                fam = f"{fam}{rank}"
            factors.append(Factor(RootSystemType(fam, rank), bool(m.group(3))))
        return cls(tuple(factors))

    @property
    def noncompact(self) -> List[Factor]:
        return [f for f in self.factors if not f.compact]

    def __str__(self):
        return ",".join(str(f) for f in self.factors)


def r_of(spec: GroupSpec) -> int:
    """Minimum of r over the non-compact simple factors."""
    nc = spec.noncompact
    if not nc:
        raise UndefinedQuantityError(f"{spec}: every factor is compact, r is undefined")
    return min(minimal_resonant_codimension(root_system(f.type)) for f in nc)


def v_of_split(t: RootSystemType) -> int:
    """Minimal codimension of a maximal parabolic of the split group of type ``t``."""
    if not t.reduced:
        raise UndefinedQuantityError(f"{t.label} is not the root system of a split group")
    rs = root_system(t)
    return min(parabolic_codimension(rs, j) for j in range(1, rs.rank + 1))


def complex_dimension(t: RootSystemType) -> int:
    """Dimension of the complex simple Lie algebra with root system ``t`` (reduced only)."""
    if not t.reduced:
        raise UndefinedQuantityError(f"{t.label} is not a reduced root system")
    rs = root_system(t)
    return len(rs.roots) + rs.rank


def d_prime_of(d_tilde: int) -> int:
    """Least k with k(k+1)/2 >= d_tilde."""
    if d_tilde < 1:
        raise HypothesisError(f"d_tilde must be positive, got {d_tilde}")
    k = (math.isqrt(8 * d_tilde + 1) - 1) // 2
    while k * (k + 1) // 2 < d_tilde:
        k += 1
    return k


@dataclass(frozen=True)
class DimensionReport:
    group: str
    r: int
    v: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    d_prime: Optional[int] = None
    sources: Dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.v is not None and self.r > self.v:
            raise FalsificationError(f"{self.group}: r = {self.r} exceeds v = {self.v}")

    def as_dict(self) -> Dict[str, Optional[int]]:
        return {"group": self.group, "r": self.r, "v": self.v, "n": self.n,
                "d": self.d, "d_prime": self.d_prime}


# family -> (smallest parameter, root system of G(p), table of (n, d, v, r))
_TABLE = {
    "SL": (3, lambda p: RootSystemType("A", p - 1),
           lambda p: dict(n=p, d=None, v=p - 1, r=p - 1)),
    "SP": (2, lambda p: RootSystemType("C", p),
           lambda p: dict(n=2 * p, d=None, v=2 * p - 1, r=2 * p - 1)),
    "SO(N,N)": (4, lambda p: RootSystemType("D", p),
                lambda p: dict(n=2 * p, d=2 * p - 1, v=2 * p - 2, r=2 * p - 2)),
    "SO(N,N+1)": (3, lambda p: RootSystemType("B", p),
                  lambda p: dict(n=2 * p + 1, d=2 * p, v=2 * p - 1, r=2 * p - 1)),
}
_ALIASES = {"SL": "SL", "SL(N)": "SL", "SP": "SP", "SP(2N)": "SP",
            "SO(N,N)": "SO(N,N)", "SONN": "SO(N,N)",
            "SO(N,N+1)": "SO(N,N+1)", "SONN1": "SO(N,N+1)"}
KNOWN_FAMILIES = ("SL", "Sp", "SO(n,n)", "SO(n,n+1)")


def _family_key(family: str) -> str:
    key = _ALIASES.get(family.replace(" ", "").upper())
    if key is None:
        raise OutOfTableError(f"no tabulated dimensions for {family!r}; known: {', '.join(KNOWN_FAMILIES)}")
    return key


def known_dims(family: str, p: int) -> DimensionReport:
    """Tabulated dimensions for SL(p,R), Sp(2p,R), SO(p,p), SO(p,p+1).

    ``r`` and ``v`` are recomputed from the root system and must agree with
    the table; ``d_prime`` is computed from the complex dimension.
    """
    key = _family_key(family)
    lo, typ, row = _TABLE[key]
    if not isinstance(p, int) or p < lo:
        raise OutOfTableError(f"{family} is tabulated only for parameter >= {lo}, got {p}")
    t = typ(p)
    vals = row(p)
    r = minimal_resonant_codimension(root_system(t))
    v = v_of_split(t)
    if (r, v) != (vals["r"], vals["v"]):
        raise FalsificationError(f"{family}({p}): computed (r, v) = {(r, v)} disagrees with {vals}")
    dp = d_prime_of(complex_dimension(t))
    sources = {"r": "computed", "v": "computed", "n": "table", "d_prime": "computed"}
    if vals["d"] is not None:
        sources["d"] = "table"
    label = {"SL": f"SL({p},R)", "SP": f"Sp({2 * p},R)",
             "SO(N,N)": f"SO({p},{p})", "SO(N,N+1)": f"SO({p},{p + 1})"}[key]
    return DimensionReport(label, r, v, vals["n"], vals["d"], dp, sources)


@dataclass(frozen=True)
class HypothesisVerdict:
    clause: Optional[int]
    r: int
    dim_m: int
    volume_preserving: bool
    rank_one_factors: Tuple[str, ...] = ()

    @property
    def applicable(self) -> bool:
        return self.clause is not None

    def describe(self) -> str:
        if self.rank_one_factors:
            return f"not applicable: rank-one factors {', '.join(self.rank_one_factors)}"
        if self.clause == 1:
            return f"clause (1): dim_m = {self.dim_m} < r = {self.r}"
        if self.clause == 2:
            return f"clause (2): dim_m = {self.dim_m} = r = {self.r} with volume preservation"
        return f"no clause: dim_m = {self.dim_m}, r = {self.r}, volume_preserving = {self.volume_preserving}"


def theorem_hypothesis(spec: GroupSpec, dim_m: int, volume_preserving: bool = False) -> HypothesisVerdict:
    """Which clause of the finiteness statement applies to (spec, dim_m, volume)."""
    if dim_m < 0:
        raise HypothesisError(f"dim_m must be nonnegative, got {dim_m}")
    r = r_of(spec)
    rank_one = tuple(str(f) for f in spec.noncompact if f.type.rank < 2)
    clause = None
    if not rank_one:
        if dim_m < r:
            clause = 1
        elif dim_m == r and volume_preserving:
            clause = 2
    return HypothesisVerdict(clause, r, dim_m, volume_preserving, rank_one)


def dimension_report(spec: GroupSpec) -> DimensionReport:
    """Computed quantities for an arbitrary spec; v and d' only for a single split factor."""
    r = r_of(spec)
    sources = {"r": "computed"}
    v = dp = None
    if len(spec.factors) == 1 and spec.factors[0].type.reduced and not spec.factors[0].compact:
        t = spec.factors[0].type
        v = v_of_split(t)
        dp = d_prime_of(complex_dimension(t))
        sources.update(v="computed", d_prime="computed")
    return DimensionReport(str(spec), r, v, None, None, dp, sources)
