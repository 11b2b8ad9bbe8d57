"""Symbolic execution of the measure-averaging pipeline on root data.

Measures are never represented.  What is tracked is the set of coarse
root classes under whose root subgroups the projected measure is known to
be invariant, whether A-invariance currently holds, and an exponent
witness ``(s, lam)`` with ``lam(s) > 0`` at every step.  Each step applies
one named rule whose side conditions are checked when it is applied and
again on replay.

Base changes are handled by moving the functional rather than the base:
with ``w`` from :func:`choose_base`, the pipeline runs on ``w(lam)`` over the
fixed base, which is the same as running on ``lam`` over ``w^-1(base)``.
"""
from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import (Any, Dict, FrozenSet, Iterable, List, Optional, Sequence,
                    Tuple, Union)

from . import kernels, linalg
from .errors import (CallerOrderError, DegenerateInputError,
                     FalsificationError, InfeasibleSelectionError, RankError,
                     SideConditionError)
from .roots import (CartanElement, Functional, RootSystem, WeylElement,
                    outside_lower_span, partner_root, root_system,
                    weyl_orbit_search)
from .roots import root_string as _root_string

TRACE_VERSION = 1


class Rule(enum.Enum):
    AVERAGE_OVER_U = "AverageOverU"
    AVERAGE_OVER_A = "AverageOverA"
    RATNER_NEGATION = "RatnerNegation"
    ADDITION_CLOSURE = "AdditionClosure"
    COMMUTATION_TRANSFER = "CommutationTransfer"

    def __str__(self):
        return self.value


CITATIONS = {
    Rule.AVERAGE_OVER_U: "equidistribution-averaging",
    Rule.AVERAGE_OVER_A: "cartan-averaging",
    Rule.RATNER_NEGATION: "ratner-sl2-negation",
    Rule.ADDITION_CLOSURE: "generated-subgroup",
    Rule.COMMUTATION_TRANSFER: "commuting-averaging",
}


@dataclass(frozen=True)
class InvarianceSet:
    classes: FrozenSet[int]
    a_invariant: bool = True


@dataclass(frozen=True)
class AveragingStep:
    rule: Rule
    subgroup_roots: FrozenSet[int]
    justification: str
    exponent_witness: Tuple[CartanElement, Functional]
    state: InvarianceSet


@dataclass(frozen=True)
class AveragingTrace:
    rs: RootSystem
    initial_lambda: Functional
    base_change: WeylElement
    working_lambda: Functional
    s1: CartanElement
    beta_hat: int
    root_string: Tuple[int, ...]
    lambda2: Functional
    beta_prime: int
    s2: CartanElement
    steps: Tuple[AveragingStep, ...]
    final: InvarianceSet

    @property
    def u_roots(self) -> FrozenSet[int]:
        return self.steps[0].subgroup_roots

    @property
    def u_prime_roots(self) -> FrozenSet[int]:
        return next(s.subgroup_roots for s in self.steps if s.rule is Rule.COMMUTATION_TRANSFER)

    @property
    def closure_is_everything(self) -> bool:
        return len(self.final.classes) == self.rs.nclasses


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# selections

def choose_base(rs: RootSystem, lam: Sequence) -> WeylElement:
    """Weyl element moving ``lam`` off span(alpha_2..alpha_l)."""
    lam = linalg.vec(lam)
    if rs.is_zero_functional(lam):
        raise DegenerateInputError("lambda vanishes on the Cartan space")
    return weyl_orbit_search(rs, lam, lambda g: outside_lower_span(rs, g))


def select_beta_hat(rs: RootSystem) -> int:
    """Partner root, with its commutation and root-string properties asserted."""
    if rs.rank < 2:
        raise RankError(f"{rs.type}: the averaging pipeline needs rank >= 2")
    b = partner_root(rs)
    for j in range(1, rs.rank):
        if rs.root_sum(b, j) >= 0:
            raise FalsificationError(f"{rs.type}: partner root plus alpha_{j + 1} is a root", b)
    if _root_string(rs, 0, b) is None:
        raise FalsificationError(f"{rs.type}: no root string from alpha_1 to the partner root", b)
    if len(rs.classes[rs.class_of[b]].members) != 1:
        raise FalsificationError(f"{rs.type}: partner root is proportional to another root", b)
    return b


def root_string(rs: RootSystem, start: int = 0, end: Optional[int] = None) -> List[int]:
    """Root indices alpha_1 = b_0, ..., b_p = beta_hat, each step adding some alpha_j, j >= 2."""
    if end is None:
        end = select_beta_hat(rs)
    path = _root_string(rs, start, end)
    if path is None:
        raise FalsificationError(f"{rs.type}: no root string from {rs.coeffs[start]} to {rs.coeffs[end]}")
    return path


def select_s1(rs: RootSystem, lam: Sequence) -> CartanElement:
    """Primitive s on the line where alpha_j vanishes for j >= 2, with lam(s) > 0."""
    if not outside_lower_span(rs, lam):
        raise CallerOrderError("lambda lies in span(alpha_2..alpha_l); call choose_base first")
    s = rs.cartan_from_values([1] + [0] * (rs.rank - 1))
    if linalg.dot(lam, s) < 0:
        s = linalg.scale(-1, s)
    return linalg.primitive(s)


def _proportional(rs: RootSystem, f: Sequence, root: int) -> bool:
    return linalg.rank([rs.pi_coords(f), rs.coeffs[root]]) < 2


def select_s2(rs: RootSystem, beta_prime: int, lam2: Sequence) -> CartanElement:
    """s with beta'(s) = 0 and lam2(s) > 0.

    Takes the component of lam2 orthogonal to beta' (so lam2(s) is the
    squared length of that component), scaled to primitive integers.
    """
    if _proportional(rs, lam2, beta_prime):
        raise InfeasibleSelectionError("lambda2 is proportional to beta'; no s2 exists")
    v = rs.project(lam2)
    b = rs.roots[beta_prime]
    s = linalg.sub(v, linalg.scale(linalg.dot(v, b) / linalg.dot(b, b), b))
    return linalg.primitive(s)


def choose_beta_prime(rs: RootSystem, beta_hat: int, lam2: Sequence, prefer: str = "beta_hat") -> int:
    """The member of {beta_hat, alpha_1} not proportional to lam2; ties follow ``prefer``."""
    if prefer not in ("beta_hat", "alpha1"):
        raise ValueError(f"prefer must be 'beta_hat' or 'alpha1', got {prefer!r}")
    order = [beta_hat, 0] if prefer == "beta_hat" else [0, beta_hat]
    for b in order:
        if not _proportional(rs, lam2, b):
            return b
    raise InfeasibleSelectionError("lambda2 is proportional to both beta_hat and alpha_1")


# ---------------------------------------------------------------------------
# rules

def _commute(rs: RootSystem, c: int, d: int) -> bool:
    """Root subgroups of classes c and d commute: no member sum is a root or zero."""
    for m in rs.classes[c].members:
        for n in rs.classes[d].members:
            if rs.root_sum(m, n) >= 0 or rs.neg(m) == n:
                return False
    return True


def _classes_of(rs: RootSystem, roots: Iterable[int]) -> FrozenSet[int]:
    return frozenset(rs.class_of[i] for i in roots)


def _roots_of(rs: RootSystem, classes: Iterable[int]) -> FrozenSet[int]:
    return frozenset(m for c in classes for m in rs.classes[c].members)


def _apply(rs: RootSystem, state: InvarianceSet, rule: Rule, sub: FrozenSet[int],
           witness: Tuple[CartanElement, Functional]) -> InvarianceSet:
    """Apply one rule; raises SideConditionError (message only) on failure."""
    s, lam = witness
    if not linalg.dot(lam, s) > 0:
        raise SideConditionError("exponent witness has lam(s) <= 0")
    sub_cls = _classes_of(rs, sub)
    if sub != _roots_of(rs, sub_cls):
        raise SideConditionError("subgroup is not a union of coarse classes")

    if rule in (Rule.AVERAGE_OVER_U, Rule.COMMUTATION_TRANSFER):
        if not sub:
            raise SideConditionError("empty subgroup")
        if any(linalg.dot(rs.roots[i], s) != 0 for i in sub):
            raise SideConditionError("witness s does not centralize the subgroup")
        if not kernels.is_closed(rs, sub_cls):
            raise SideConditionError("subgroup roots are not addition-closed")
        one_sided = all(rs.is_positive(i) for i in sub) or not any(rs.is_positive(i) for i in sub)
        if not one_sided and rs.root_feasible([(i, ">") for i in sub]) is None:
            raise SideConditionError("subgroup is not unipotent (no positive system contains it)")
        if rule is Rule.AVERAGE_OVER_U:
            if any(not _commute(rs, c, d) for c in state.classes for d in sub_cls):
                raise SideConditionError("current invariance does not commute with the subgroup")
            return InvarianceSet(state.classes | sub_cls, False)
        kept = frozenset(c for c in state.classes if all(_commute(rs, c, d) for d in sub_cls))
        return InvarianceSet(kept, state.a_invariant)

    if rule is Rule.AVERAGE_OVER_A:
        if sub:
            raise SideConditionError("A-averaging takes no root subgroup")
        return InvarianceSet(state.classes, True)

    if rule is Rule.RATNER_NEGATION:
        if not state.a_invariant:
            raise SideConditionError("negation requires A-invariance")
        if not sub_cls <= state.classes:
            raise SideConditionError("negated classes are not currently invariant")
        return InvarianceSet(state.classes | frozenset(rs.neg_class(c) for c in sub_cls), True)

    if rule is Rule.ADDITION_CLOSURE:
        closed = kernels.close_classes(rs, state.classes)
        if sub_cls != closed - state.classes:
            raise SideConditionError("added classes differ from the generated closure")
        return InvarianceSet(closed, state.a_invariant)

    raise SideConditionError(f"unknown rule {rule!r}")


class _Recorder:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.state = InvarianceSet(frozenset(), True)
        self.steps: List[AveragingStep] = []

    def step(self, rule: Rule, sub: Iterable[int], witness) -> None:
        sub = frozenset(sub)
        try:
            self.state = _apply(self.rs, self.state, rule, sub, witness)
        except SideConditionError as exc:
            raise SideConditionError(f"step {len(self.steps)} ({rule}): {exc}", len(self.steps),
                                     rule, CITATIONS[rule]) from None
        self.steps.append(AveragingStep(rule, sub, CITATIONS[rule], witness, self.state))


def _lower_unipotent(rs: RootSystem) -> FrozenSet[int]:
    """Positive roots in span(alpha_2..alpha_l)."""
    return frozenset(i for i in rs.positives if rs.coeffs[i][0] == 0)


def run_averaging(rs: RootSystem, lam: Sequence, lambda2: Optional[Sequence] = None,
                  prefer: str = "beta_hat") -> AveragingTrace:
    """Run the two-stage averaging pipeline from an exponent functional ``lam``.

    ``lambda2`` stands for the exponent functional available after the first
    averaging stage; it defaults to the working functional and must be
    positive on s1.  ``prefer`` breaks the tie when neither beta_hat nor
    alpha_1 is proportional to ``lambda2``.
    """
    lam = linalg.vec(lam)
    if len(lam) != rs.ambient_dim:
        raise DegenerateInputError(f"lambda has {len(lam)} coordinates, expected {rs.ambient_dim}")
    w = choose_base(rs, lam)
    wl = rs.project(w.apply(lam))
    s1 = select_s1(rs, wl)
    bh = select_beta_hat(rs)
    chain = root_string(rs, 0, bh)
    lam2 = wl if lambda2 is None else rs.project(linalg.vec(lambda2))
    if not linalg.dot(lam2, s1) > 0:
        raise SideConditionError("lambda2(s1) <= 0: the second-stage functional must be positive on s1",
                                 None, Rule.AVERAGE_OVER_U, CITATIONS[Rule.AVERAGE_OVER_U])
    bp = choose_beta_prime(rs, bh, lam2, prefer)
    s2 = select_s2(rs, bp, lam2)

    rec = _Recorder(rs)
    u = _lower_unipotent(rs)
    u_prime = _roots_of(rs, [rs.class_of[bp]])
    rec.step(Rule.AVERAGE_OVER_U, u, (s1, wl))
    rec.step(Rule.AVERAGE_OVER_A, (), (s1, wl))
    rec.step(Rule.RATNER_NEGATION, u, (s1, wl))
    rec.step(Rule.COMMUTATION_TRANSFER, u_prime, (s2, lam2))
    rec.step(Rule.AVERAGE_OVER_U, u_prime, (s2, lam2))
    rec.step(Rule.AVERAGE_OVER_A, (), (s2, lam2))
    while True:
        missing = [c for c in rec.state.classes if rs.neg_class(c) not in rec.state.classes]
        if missing:
            rec.step(Rule.RATNER_NEGATION, _roots_of(rs, missing), (s2, lam2))
        added = kernels.close_classes(rs, rec.state.classes) - rec.state.classes
        if added:
            rec.step(Rule.ADDITION_CLOSURE, _roots_of(rs, added), (s2, lam2))
        if not missing and not added:
            break
    trace = AveragingTrace(rs, lam, w, wl, s1, bh, tuple(chain), lam2, bp, s2,
                           tuple(rec.steps), rec.state)
    if not trace.closure_is_everything:
        raise FalsificationError(
            f"{rs.type}: averaging stopped at {len(rec.state.classes)} of {rs.nclasses} classes",
            rec.state.classes)
    return trace


def random_functional(rs: RootSystem, rng: random.Random, span: int = 9, max_den: int = 5) -> Functional:
    """Random rational ambient functional that is nonzero on the Cartan space."""
    while True:
        f = tuple(Fraction(rng.randint(-span, span), rng.randint(1, max_den)) for _ in range(rs.ambient_dim))
        if not rs.is_zero_functional(f):
            return f


def run_product(spec, lambdas: Sequence[Optional[Sequence]]) -> List[Optional[AveragingTrace]]:
    """One pipeline run per non-compact factor of a group spec; compact factors yield None.

    ``lambdas`` is aligned with ``spec.factors``; entries for compact factors
    are ignored.  Non-compact rank-one factors are rejected.
    """
    if len(lambdas) != len(spec.factors):
        raise ValueError(f"expected {len(spec.factors)} functionals, got {len(lambdas)}")
    out: List[Optional[AveragingTrace]] = []
    for factor, lam in zip(spec.factors, lambdas):
        if factor.compact:
            out.append(None)
            continue
        rs = root_system(factor.type)
        if rs.rank < 2:
            raise RankError(f"non-compact factor {factor.type.label} has rank 1")
        out.append(run_averaging(rs, lam))
    return out


# ---------------------------------------------------------------------------
# replay

def replay(trace: Union[AveragingTrace, Dict[str, Any], str]) -> ReplayResult:
    """Re-execute a trace from its initial state, checking every side condition.

    Accepts a trace object, its dict form, or serialized text (either the
    JSON document or JSON lines).  A failing result carries the index of the
    first bad step (``None`` for header-level failures).
    """
    if not isinstance(trace, AveragingTrace):
        try:
            trace = loads(trace) if isinstance(trace, str) else from_dict(trace)
        except (KeyError, ValueError, TypeError) as exc:
            return ReplayResult(False, None, f"unreadable trace: {exc}")
    rs = trace.rs
    try:
        if rs.is_zero_functional(trace.initial_lambda):
            return ReplayResult(False, None, "initial lambda vanishes")
        w = rs.weyl_element(trace.base_change.word)
        wl = rs.project(w.apply(trace.initial_lambda))
        if wl != tuple(trace.working_lambda):
            return ReplayResult(False, None, "base change does not produce the working lambda")
        if not outside_lower_span(rs, wl):
            return ReplayResult(False, None, "working lambda lies in span(alpha_2..alpha_l)")
        if trace.s1 != select_s1(rs, wl):
            return ReplayResult(False, None, "s1 differs from the canonical selection")
        if trace.beta_hat != select_beta_hat(rs):
            return ReplayResult(False, None, "beta_hat differs from the partner root")
        chain = trace.root_string
        if not chain or chain[0] != 0 or chain[-1] != trace.beta_hat:
            return ReplayResult(False, None, "root string does not run from alpha_1 to beta_hat")
        for a, b in zip(chain, chain[1:]):
            d = tuple(y - x for x, y in zip(rs.coeffs[a], rs.coeffs[b]))
            if d[0] != 0 or sum(d) != 1 or min(d) < 0:
                return ReplayResult(False, None, "root string step is not a simple root alpha_j, j >= 2")
        if trace.beta_prime not in (0, trace.beta_hat) or _proportional(rs, trace.lambda2, trace.beta_prime):
            return ReplayResult(False, None, "beta' is not a valid non-proportional choice")
        if not linalg.dot(trace.lambda2, trace.s1) > 0:
            return ReplayResult(False, None, "lambda2(s1) <= 0")
    except (DegenerateInputError, CallerOrderError, FalsificationError, InfeasibleSelectionError) as exc:
        return ReplayResult(False, None, str(exc))

    allowed = (tuple(trace.working_lambda), tuple(trace.lambda2))
    state = InvarianceSet(frozenset(), True)
    for k, st in enumerate(trace.steps):
        if st.justification != CITATIONS[st.rule]:
            return ReplayResult(False, k, "citation does not match the rule")
        if tuple(st.exponent_witness[1]) not in allowed:
            return ReplayResult(False, k, "witness functional is neither lambda nor lambda2")
        try:
            state = _apply(rs, state, st.rule, st.subgroup_roots, st.exponent_witness)
        except SideConditionError as exc:
            return ReplayResult(False, k, str(exc))
        if state != st.state:
            return ReplayResult(False, k, "recorded invariance set differs from the recomputed one")
    if state != trace.final:
        return ReplayResult(False, len(trace.steps), "final set differs from the last step")
    if len(state.classes) != rs.nclasses:
        return ReplayResult(False, len(trace.steps), "final closure is not the whole root system")
    return ReplayResult(True)


# ---------------------------------------------------------------------------
# serialization: rationals as "p/q" strings, roots as base coefficients

def _q(x: Fraction) -> str:
    return str(Fraction(x))


def _qvec(v: Sequence) -> List[str]:
    return [_q(x) for x in v]


def _parse_qvec(v: Sequence) -> Tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def _root_ref(rs: RootSystem, i: int) -> List[int]:
    return list(rs.coeffs[i])


def _root_from(rs: RootSystem, c: Sequence[int]) -> int:
    i = rs.index_of_coeffs(tuple(int(x) for x in c))
    if i is None:
        raise ValueError(f"{list(c)} is not a root of {rs.type.label}")
    return i


def _classes_ref(rs: RootSystem, classes: Iterable[int]) -> List[List[int]]:
    return [_root_ref(rs, rs.classes[c].representative) for c in sorted(classes)]


def _header(trace: AveragingTrace) -> Dict[str, Any]:
    rs = trace.rs
    return {
        "version": TRACE_VERSION,
        "type": rs.type.label,
        "lambda": _qvec(trace.initial_lambda),
        "base_change": list(trace.base_change.word),
        "working_lambda": _qvec(trace.working_lambda),
        "s1": _qvec(trace.s1),
        "beta_hat": _root_ref(rs, trace.beta_hat),
        "root_string": [_root_ref(rs, i) for i in trace.root_string],
        "lambda2": _qvec(trace.lambda2),
        "beta_prime": _root_ref(rs, trace.beta_prime),
        "s2": _qvec(trace.s2),
    }


def _step_dict(rs: RootSystem, k: int, st: AveragingStep) -> Dict[str, Any]:
    return {
        "index": k,
        "rule": st.rule.value,
        "subgroup": [_root_ref(rs, i) for i in sorted(st.subgroup_roots)],
        "citation": st.justification,
        "witness": {"s": _qvec(st.exponent_witness[0]), "lambda": _qvec(st.exponent_witness[1])},
        "invariant": _classes_ref(rs, st.state.classes),
        "a_invariant": st.state.a_invariant,
    }


def _final_dict(trace: AveragingTrace) -> Dict[str, Any]:
    return {"invariant": _classes_ref(trace.rs, trace.final.classes),
            "a_invariant": trace.final.a_invariant,
            "closure_is_everything": trace.closure_is_everything}


def to_dict(trace: AveragingTrace) -> Dict[str, Any]:
    d = _header(trace)
    d["steps"] = [_step_dict(trace.rs, k, st) for k, st in enumerate(trace.steps)]
    d["final"] = _final_dict(trace)
    return d


def from_dict(d: Dict[str, Any]) -> AveragingTrace:
    rs = root_system(d["type"])
    if d.get("version", TRACE_VERSION) != TRACE_VERSION:
        raise ValueError(f"unsupported trace version {d.get('version')}")

    def state(rec):
        cls = frozenset(rs.class_of[_root_from(rs, c)] for c in rec["invariant"])
        return InvarianceSet(cls, bool(rec["a_invariant"]))

    steps = []
    for rec in d["steps"]:
        steps.append(AveragingStep(
            Rule(rec["rule"]),
            frozenset(_root_from(rs, c) for c in rec["subgroup"]),
            rec["citation"],
            (_parse_qvec(rec["witness"]["s"]), _parse_qvec(rec["witness"]["lambda"])),
            state(rec),
        ))
    return AveragingTrace(
        rs=rs,
        initial_lambda=_parse_qvec(d["lambda"]),
        base_change=rs.weyl_element(tuple(int(j) for j in d["base_change"])),
        working_lambda=_parse_qvec(d["working_lambda"]),
        s1=_parse_qvec(d["s1"]),
        beta_hat=_root_from(rs, d["beta_hat"]),
        root_string=tuple(_root_from(rs, c) for c in d["root_string"]),
        lambda2=_parse_qvec(d["lambda2"]),
        beta_prime=_root_from(rs, d["beta_prime"]),
        s2=_parse_qvec(d["s2"]),
        steps=tuple(steps),
        final=state(d["final"]),
    )


def dumps(trace: AveragingTrace, lines: bool = True) -> str:
    """Serialize as JSON lines (header, one record per step, final) or one JSON document."""
    if not lines:
        return json.dumps(to_dict(trace), sort_keys=True) + "\n"
    out = [json.dumps({"record": "header", **_header(trace)}, sort_keys=True)]
    for k, st in enumerate(trace.steps):
        out.append(json.dumps({"record": "step", **_step_dict(trace.rs, k, st)}, sort_keys=True))
    out.append(json.dumps({"record": "final", **_final_dict(trace)}, sort_keys=True))
    return "\n".join(out) + "\n"


def loads(text: str) -> AveragingTrace:
    """Parse either serialization produced by :func:`dumps`."""
    text = text.strip()
    if not text:
        raise ValueError("empty trace")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if isinstance(doc, dict) and "record" not in doc:
        return from_dict(doc)
    records = [json.loads(line) for line in text.splitlines() if line.strip()]
    by_kind: Dict[str, List[Dict[str, Any]]] = {}
    for r in records:
        by_kind.setdefault(r.get("record"), []).append(r)
    if len(by_kind.get("header", [])) != 1 or len(by_kind.get("final", [])) != 1:
        raise ValueError("trace needs exactly one header and one final record")
    d = dict(by_kind["header"][0])
    d["steps"] = sorted(by_kind.get("step", []), key=lambda r: r["index"])
    d["final"] = by_kind["final"][0]
    return from_dict(d)
