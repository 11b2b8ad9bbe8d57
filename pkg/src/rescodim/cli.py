"""Command-line interface.

Exit codes: 0 success, 1 a verification found a counterexample, 2 invalid
input, 3 an averaging side condition failed or a trace did not replay.
Output is assembled completely before anything is written.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import averaging, dims, output
from .errors import (AmbiguityError, DegenerateInputError, FalsificationError,
                     HypothesisError, InfeasibleSelectionError, OutOfTableError,
                     RankError, SideConditionError, UndefinedQuantityError)
from .parabolic import (maximal_parabolic_table, minimal_resonant_codimension,
                        resonant_codimension, standard_parabolic, verify_prop25)
from .roots import (FAMILIES, HIGHEST_ROOT_FAMILIES, RootSystemType, dynkin_edges, highest_root,
                    root_system, second_highest_root)

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_SIDE_CONDITION = 0, 1, 2, 3
SIGMA = "Σ"


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _system(args):
    try:
        return root_system(RootSystemType.parse(args.type, args.rank))
    except (RankError, ValueError) as exc:
        raise CliError(str(exc)) from None


def _fractions(text: str) -> List[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise CliError(f"cannot parse {text!r} as comma-separated rationals") from None


def _classical_types(max_rank: int):
    out = []
    for fam in ("A", "B", "C", "D", "BC"):
        lo = {"A": 1, "B": 2, "C": 2, "D": 4, "BC": 1}[fam]
        out += [RootSystemType(fam, n) for n in range(lo, max_rank + 1)]
    for fam, n in (("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("G2", 2)):
        if n <= max_rank:
            out.append(RootSystemType(fam, n))
    return out


# ---------------------------------------------------------------------------
# commands return (rows, columns, title, footer, exit code)

def cmd_roots(args):
    rs = _system(args)
    rows = [{"index": i, "root": rs.roots[i], "coefficients": rs.coeffs[i], "height": rs.height(i),
             "positive": rs.is_positive(i), "class": rs.class_of[i]} for i in range(len(rs.roots))]
    title = f"{rs.type.label}: {len(rs.roots)} roots, {rs.nclasses} coarse classes"
    return rows, None, title, None, EXIT_OK


def _delta_prime(rs):
    try:
        return rs.coeffs[second_highest_root(rs)]
    except AmbiguityError:
        return None


def cmd_table(args):
    rows = []
    for t in _classical_types(args.max_rank):
        rs = root_system(t)
        table = maximal_parabolic_table(rs)
        r = minimal_resonant_codimension(rs)
        rows.append({
            "type": t.label,
            "bourbaki_order": rs.bourbaki_labels,
            "edges": dynkin_edges(rs),
            "alpha1": rs.bourbaki_labels[0],
            "delta": rs.coeffs[highest_root(rs)],
            "delta_prime": _delta_prime(rs),
            "codims": [c for _, c in table],
            "r": r,
            "argmin": min(j for j, c in table if c == r),
        })
    return rows, None, "maximal parabolics: resonant codimension per excluded simple root", None, EXIT_OK


def cmd_parabolics(args):
    rs = _system(args)
    rows = []
    n = rs.rank
    for mask in range(2 ** n):
        levi = [j for j in range(1, n + 1) if mask >> (j - 1) & 1]
        p = standard_parabolic(rs, levi)
        rows.append({"levi": levi, "excluded": [j for j in range(1, n + 1) if j not in levi],
                     "roots": len(p.root_set), "resonant_codimension": resonant_codimension(rs, p)})
    rows.sort(key=lambda r: (len(r["excluded"]), r["excluded"]))
    title = f"{rs.type.label}: standard parabolics, r = {minimal_resonant_codimension(rs)}"
    return rows, None, title, None, EXIT_OK


def _trace_rows(trace) -> List[Dict[str, Any]]:
    rs = trace.rs
    return [averaging._step_dict(rs, k, st) for k, st in enumerate(trace.steps)]


def cmd_average(args):
    rs = _system(args)
    if args.lam is not None:
        lam = _fractions(args.lam)
        if len(lam) != rs.ambient_dim:
            raise CliError(f"{rs.type.label} functionals have {rs.ambient_dim} coordinates, got {len(lam)}")
    else:
        lam = averaging.random_functional(rs, random.Random(args.seed))
    lam2 = None
    if args.lambda2 is not None:
        lam2 = _fractions(args.lambda2)
        if len(lam2) != rs.ambient_dim:
            raise CliError(f"lambda2 needs {rs.ambient_dim} coordinates, got {len(lam2)}")
    try:
        trace = averaging.run_averaging(rs, lam, lam2, prefer=args.prefer)
    except DegenerateInputError as exc:
        raise CliError(str(exc)) from None
    except (SideConditionError, InfeasibleSelectionError) as exc:
        cite = getattr(exc, "citation", None)
        raise CliError(f"{exc}" + (f" [{cite}]" if cite else ""), EXIT_SIDE_CONDITION) from None
    except FalsificationError as exc:
        raise CliError(str(exc), EXIT_FALSIFIED) from None
    if args.format == "json-lines":
        return averaging.dumps(trace), None, None, None, EXIT_OK
    head = averaging._header(trace)
    title = "\n".join(f"{k}: {output.cell(v)}" for k, v in head.items() if k != "version")
    footer = f"closure = {SIGMA}" if trace.closure_is_everything else f"closure != {SIGMA}"
    return _trace_rows(trace), None, title, footer, EXIT_OK


def cmd_replay(args):
    try:
        with open(args.trace, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {args.trace}: {exc.strerror}") from None
    res = averaging.replay(text)
    row = {"ok": res.ok, "step": res.step, "reason": res.reason}
    return [row], None, None, None, EXIT_OK if res else EXIT_SIDE_CONDITION


def _verify_prop25(args):
    rows, code = [], EXIT_OK
    for t in _classical_types(min(args.max_rank, 3)):
        if t.rank < 2:
            continue
        rep = verify_prop25(root_system(t))
        rows.append({"type": rep.type, "classes": rep.nclasses, "r": rep.r, "closed_examined": rep.examined,
                     "parabolic": rep.confirmed, "counterexamples": len(rep.counterexamples), "ok": rep.ok})
        if not rep.ok:
            code = EXIT_FALSIFIED
    return rows, code


def _verify_remark53(args):
    rng = random.Random(args.seed)
    rows, code = [], EXIT_OK
    for t in _classical_types(args.max_rank):
        if t.rank < 2:
            continue
        rs = root_system(t)
        try:
            bh = averaging.select_beta_hat(rs)
            chain = averaging.root_string(rs, 0, bh)
            runs = 0
            for _ in range(args.samples):
                tr = averaging.run_averaging(rs, averaging.random_functional(rs, rng))
                if averaging.replay(tr):
                    runs += 1
            a1 = rs.coeffs[highest_root(rs)][0]
            expected = 1 if t.family in HIGHEST_ROOT_FAMILIES else 2
            ok = runs == args.samples and a1 == expected
            rows.append({"type": t.label, "beta_hat": rs.coeffs[bh], "string_length": len(chain),
                         "delta_alpha1": a1, "expected": expected, "runs_replayed": runs, "ok": ok})
        except (FalsificationError, SideConditionError):
            rows.append({"type": t.label, "beta_hat": None, "string_length": None, "delta_alpha1": None,
                         "expected": None, "runs_replayed": 0, "ok": False})
            ok = False
        if not ok:
            code = EXIT_FALSIFIED
    return rows, code


def _verify_dims(args):
    rows, code = [], EXIT_OK
    ranges = {"SL": range(3, 10), "Sp": range(2, 9), "SO(n,n)": range(4, 9), "SO(n,n+1)": range(3, 9)}
    for fam, ps in ranges.items():
        for p in ps:
            try:
                rep = dims.known_dims(fam, p)
                rows.append({"check": "table", **rep.as_dict(), "ok": True})
            except FalsificationError:
                rows.append({"check": "table", "group": f"{fam}({p})", "ok": False})
                code = EXIT_FALSIFIED
    for t in _classical_types(8):
        if not t.reduced or t.rank < 2:
            continue
        r = minimal_resonant_codimension(root_system(t))
        v = dims.v_of_split(t)
        rows.append({"check": "r<=v", "group": t.label, "r": r, "v": v, "ok": r <= v})
        if r > v:
            code = EXIT_FALSIFIED
    return rows, code


def cmd_verify(args):
    fn = {"prop25": _verify_prop25, "remark53": _verify_remark53, "dims": _verify_dims}[args.what]
    rows, code = fn(args)
    cols = []
    for r in rows:
        cols += [c for c in r if c not in cols]
    return rows, cols, f"verify {args.what}", "all checks pass" if code == EXIT_OK else "FAILURES", code


def cmd_dims(args):
    try:
        spec = dims.GroupSpec.parse(args.spec)
        rep = dims.dimension_report(spec)
        verdict = None if args.dim_m is None else dims.theorem_hypothesis(spec, args.dim_m, args.volume)
    except (HypothesisError, RankError, UndefinedQuantityError, OutOfTableError) as exc:
        raise CliError(str(exc)) from None
    row = rep.as_dict()
    if verdict is not None:
        row.update(dim_m=verdict.dim_m, volume_preserving=verdict.volume_preserving,
                   clause=verdict.clause, verdict=verdict.describe())
    return [row], None, None, None, EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=output.FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="rescodim", parents=[common],
                                description="Exact root-system computations for resonant codimension.")
    sub = p.add_subparsers(dest="command", required=True)

    def typed(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("type", help=f"one of {', '.join(FAMILIES)}, or e.g. A3")
        sp.add_argument("rank", nargs="?", type=int)
        return sp

    typed("roots", "list roots, base coefficients, heights and coarse classes").set_defaults(fn=cmd_roots)
    sp = sub.add_parser("table", parents=[common], help="maximal-parabolic table for every type")
    sp.add_argument("--max-rank", type=int, default=8)
    sp.set_defaults(fn=cmd_table)
    typed("parabolics", "standard parabolics and their resonant codimension").set_defaults(fn=cmd_parabolics)

    sp = typed("average", "run the averaging simulator and print its trace")
    sp.add_argument("--lambda", dest="lam", metavar="COORDS", help="comma-separated rationals; random if omitted")
    sp.add_argument("--lambda2", metavar="COORDS", help="second-stage functional (default: the working lambda)")
    sp.add_argument("--prefer", choices=("beta_hat", "alpha1"), default="beta_hat")
    sp.set_defaults(fn=cmd_average)

    sp = sub.add_parser("replay", parents=[common], help="check a saved trace")
    sp.add_argument("trace", metavar="FILE")
    sp.set_defaults(fn=cmd_replay)

    sp = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    sp.add_argument("what", choices=("prop25", "remark53", "dims"))
    sp.add_argument("--max-rank", type=int, default=None)
    sp.add_argument("--samples", type=int, default=5, help="random functionals per type (remark53)")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("dims", parents=[common], help="critical dimensions of a group spec such as A3,A1*")
    sp.add_argument("spec")
    sp.add_argument("--dim-m", type=int)
    sp.add_argument("--volume", action="store_true", help="the action preserves a volume")
    sp.set_defaults(fn=cmd_dims)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("format", "table"), ("out", None), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if getattr(args, "max_rank", None) is None and args.command == "verify":
        args.max_rank = 3 if args.what == "prop25" else 8
    try:
        rows, cols, title, footer, code = args.fn(args)
    except CliError as exc:
        print(f"rescodim: error: {exc}", file=sys.stderr)
        return exc.code
    text = rows if isinstance(rows, str) else output.render(rows, args.format, cols, title, footer)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"rescodim: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
