"""Command-line front end: ``fibnorm <command> ...`` or ``python -m fibnorm``.

Exit codes: 0 success, 1 a verification was refuted (or bench strategies
disagreed), 2 usage error, 3 a degenerate value was requested as exact.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from . import bench as bench_mod
from . import distances, identities, threshold
from .core import PRECISION_ENV, int_str, resolve_precision, sequence
from .norms import NormOrder, PNormResult, matrix_pnorm, pnorm
from .structs import build_F, build_Q, build_q, build_q_nr, build_S

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
FORMATS = ("plain", "json", "csv")


class UsageError(ValueError):
    pass


# ------------------------------------------------------------------ rendering

def _s(x: Any) -> Any:
    """JSON-safe rendering: exact integers and reals become strings."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return int_str(x)
    if isinstance(x, Fraction):
        return f"{int_str(x.numerator)}/{int_str(x.denominator)}"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    if isinstance(x, mpmath.mpf):
        if mpmath.isinf(x):
            return "inf" if x > 0 else "-inf"
        return mpmath.nstr(x, max(15, int(mpmath.mp.prec * 0.30103) - 2))
    if isinstance(x, dict):
        return {str(k): _s(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_s(v) for v in x]
    return str(x)


# small integer parameters stay JSON numbers; computed values become strings
PARAM_KEYS = frozenset({"n", "r", "d", "p", "k"})


def _emit_record(record: dict, fmt: str, out) -> None:
    rec = {k: v if k in PARAM_KEYS and type(v) is int else _s(v) for k, v in record.items()}
    if fmt == "json":
        out.write(json.dumps(rec) + "\n")
    elif fmt == "csv":
        flat = {k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in rec.items()}
        w = csv.DictWriter(out, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
    else:
        for k, v in rec.items():
            if isinstance(v, dict):
                v = ", ".join(f"{a}={b}" for a, b in v.items())
            out.write(f"{k}: {'' if v is None else v}\n")


# ------------------------------------------------------------------ parsing

def _order(text: str) -> NormOrder:
    try:
        return NormOrder.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    """'1:200' (inclusive), '1,2,5' or a single integer."""
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _positive_epsilon(text: str) -> str:
    try:
        ok = mpmath.mpf(text) > 0
    except (ValueError, TypeError):
        ok = False
    if not ok:
        raise argparse.ArgumentTypeError(f"epsilon must be a positive number, got {text!r}")
    return text


def _globals_parent(suppress: bool) -> argparse.ArgumentParser:
    # The same flags are accepted before and after the subcommand.
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=d("plain"))
    p.add_argument("--precision", type=int, default=d(None),
                   help=f"working precision in bits (default ${PRECISION_ENV} or 128)")
    p.add_argument("--seed", type=int, default=d(0), help="shuffles bench strategy order")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibnorm", parents=[_globals_parent(False)],
        description="Exact p-norms of Fibonacci vectors and matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    g = [_globals_parent(True)]

    p = sub.add_parser("seq", parents=g, help="print g(k)_from .. g(k)_to")
    p.add_argument("start", type=int)
    p.add_argument("stop", type=int)
    p.add_argument("-k", type=int, default=2)

    p = sub.add_parser("vector-norm", parents=g, help="norm of q_n (qvec N) or q_{n,r} (nrvec N R)")
    p.add_argument("object", choices=("qvec", "nrvec"))
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("--order", type=_order, required=True,
                   help='1, 2, -1, 0, inf, -inf, 2.5 ... (write --order=-inf for negative tokens)')
    p.add_argument("--exact", action="store_true", help="fail with exit 3 on a degenerate value")

    p = sub.add_parser("matrix-norm", parents=g, help="entrywise norm of F(k)_n, Q(k)_n or S(k)_n")
    p.add_argument("object", choices=("fmat", "qmat", "smat"))
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--order", type=_order, required=True)
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("verify", parents=g, help="check registered identities against brute force")
    p.add_argument("ids", nargs="*", default=["all"])
    for name in ("n", "r", "p", "k", "d"):
        p.add_argument(f"--{name}", type=_int_list, default=None, metavar="A:B|A,B,...")
    p.add_argument("--eps", type=_str_list, default=None)
    p.add_argument("--list", action="store_true", help="list identity ids and exit")

    p = sub.add_parser("threshold-p", parents=g, help="exponent bringing ||q_n||_p within eps of F_n")
    p.add_argument("n", type=int)
    p.add_argument("epsilon", type=_positive_epsilon)

    p = sub.add_parser("distance", parents=g, help="p-distance between q_{n+d,r} and q_{n,r}")
    for name in ("n", "r", "d", "p"):
        p.add_argument(name, type=int)

    p = sub.add_parser("bench", parents=g, help="closed form versus direct summation timings")
    p.add_argument("--sizes", type=_int_list, default=[10_000])
    p.add_argument("--quantities", type=_str_list, default=list(bench_mod.QUANTITIES))
    p.add_argument("--strategies", type=_str_list, default=["closed", "direct"])
    p.add_argument("--reps", type=int, default=3)
    return parser


def _normalize_argv(argv: Sequence[str]) -> list[str]:
    """Glue '--order -inf' into '--order=-inf' so argparse does not see a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--order":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--order={nxt}")
        else:
            out.append(tok)
    return out


@contextmanager
def _precision_env(prec: int | None):
    if prec is None:
        yield
        return
    resolve_precision(prec)
    old = os.environ.get(PRECISION_ENV)
    os.environ[PRECISION_ENV] = str(prec)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop(PRECISION_ENV, None)
        else:
            os.environ[PRECISION_ENV] = old


# ------------------------------------------------------------------ commands

def cmd_seq(args, out) -> int:
    k, a, b = args.k, args.start, args.stop
    if k < 2 or a < 1 or b < a:
        raise UsageError(f"need k >= 2 and 1 <= from <= to, got k={k}, {a}..{b}")
    values = sequence(k).terms(a, b)
    if args.format == "json":
        out.write(json.dumps({"k": k, "values": [int_str(v) for v in values]}) + "\n")
    elif args.format == "csv":
        out.write(",".join(int_str(v) for v in values) + "\n")
    else:
        out.write(" ".join(int_str(v) for v in values) + "\n")
    return EXIT_OK


def _norm_record(obj: str, params: dict, res: PNormResult) -> dict:
    return {
        "object": obj,
        **params,
        "order": str(res.order),
        "exact_power_sum": res.exact_power_sum,
        "exact_value": res.exact_value,
        "norm": res.float_value,
        "degenerate": res.degenerate,
    }


def _finish_norm(args, obj, params, res, out) -> int:
    if args.exact and res.degenerate:
        print(f"error: {obj} norm of order {res.order} is degenerate and has no exact value",
              file=sys.stderr)
        return EXIT_DEGENERATE
    _emit_record(_norm_record(obj, params, res), args.format, out)
    return EXIT_OK


def cmd_vector_norm(args, out) -> int:
    if args.object == "qvec":
        if len(args.params) != 1:
            raise UsageError("qvec takes exactly one parameter N")
        params = {"n": args.params[0]}
        v = build_q(params["n"])
    else:
        if len(args.params) != 2:
            raise UsageError("nrvec takes exactly two parameters N R")
        params = {"n": args.params[0], "r": args.params[1]}
        v = build_q_nr(params["n"], params["r"])
    return _finish_norm(args, args.object, params, pnorm(v, args.order), out)


_BUILDERS = {"fmat": build_F, "qmat": build_Q, "smat": build_S}


def cmd_matrix_norm(args, out) -> int:
    m = _BUILDERS[args.object](args.k, args.n)
    return _finish_norm(args, args.object, {"k": args.k, "n": args.n},
                        matrix_pnorm(m, args.order), out)


def cmd_verify(args, out) -> int:
    if args.list:
        for i in list(identities.REGISTRY) + list(identities.AS_PRINTED):
            out.write(i + "\n")
        return EXIT_OK
    ids = list(identities.REGISTRY) if args.ids in (["all"], []) else args.ids
    unknown = [i for i in ids if i not in identities.REGISTRY and i not in identities.AS_PRINTED]
    if unknown:
        raise UsageError(f"unknown identity ids: {', '.join(unknown)}")
    ranges = {name: getattr(args, name) for name in ("n", "r", "p", "k", "d", "eps")
              if getattr(args, name) is not None}
    reports = [identities.verify(i, ranges or None) for i in ids]
    refuted = [r.id for r in reports if r.status == identities.REFUTED]

    if args.format == "json":
        doc = {"reports": [r.to_json() for r in reports],
               "summary": {"total": len(reports), "refuted": refuted,
                           "errata": [r.id for r in reports
                                      if r.status == identities.VERIFIED_WITH_ERRATUM]}}
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("id", "status", "checked", "range", "counterexample"))
        for r in reports:
            w.writerow((r.id, r.status, r.checked, json.dumps(r.range),
                        json.dumps(r.counterexample) if r.counterexample else ""))
    else:
        for r in reports:
            line = f"{r.id:<24} {r.status:<22} checked={r.checked}"
            if r.status == identities.REFUTED:
                line += f" counterexample={json.dumps(r.counterexample)}"
            out.write(line + "\n")
        out.write(f"{len(reports)} identities, {len(refuted)} refuted\n")
    return EXIT_REFUTED if refuted else EXIT_OK


def cmd_threshold(args, out) -> int:
    if args.n < 2:
        raise UsageError(f"threshold needs n >= 2, got {args.n}")
    rep = threshold.verify_threshold(args.n, args.epsilon, with_minimal=True)
    _emit_record({
        "n": args.n,
        "epsilon": args.epsilon,
        "p_bound": rep.p_bound,
        "p_empirical": rep.p_empirical,
        "gap_at_bound": rep.gap_at_bound,
        "gap_within_epsilon": rep.gap_within_epsilon,
    }, args.format, out)
    return EXIT_OK


def cmd_distance(args, out) -> int:
    n, r, d, p = args.n, args.r, args.d, args.p
    if n < 0 or r < 1 or d < 1 or p < 1:
        raise UsageError(f"need n >= 0, r, d, p >= 1, got ({n}, {r}, {d}, {p})")
    exact = distances.distance_direct(n, r, d, p)
    pair = distances.ShiftedPair(n, r, d)
    rec: dict[str, Any] = {
        "n": n, "r": r, "d": d, "p": p,
        "exact": exact,
        "closed_form": distances.distance_closed(n, r, d, p),
        "norm": pnorm(pair.x - pair.y, NormOrder.integer(p)).float_value,
    }
    if p == 1:
        sd = distances.sum_diff_one_norm(n, r, d)
        rec["sum_diff"] = {"direct": sd.direct, "closed_form": sd.closed_form, "agree": sd.agree}
    if p == 2:
        pg = distances.parallelogram_check(n, r, d)
        rec["parallelogram"] = {"lhs": pg.lhs, "rhs": pg.rhs, "rhs_closed": pg.rhs_closed,
                                "holds": pg.holds}
        g = distances.golden_approx(n, r, d)
        rec.update(approx=g.approx, abs_err=g.abs_err, rel_err=g.rel_err)
    _emit_record(rec, args.format, out)
    return EXIT_OK


_STRATEGY_ALIASES = {"closed": bench_mod.CLOSED, "direct": bench_mod.DIRECT,
                     bench_mod.CLOSED: bench_mod.CLOSED, bench_mod.DIRECT: bench_mod.DIRECT}


def cmd_bench(args, out) -> int:
    try:
        strategies = tuple(_STRATEGY_ALIASES[s] for s in args.strategies)
    except KeyError as exc:
        raise UsageError(f"unknown strategy {exc.args[0]!r}") from None
    try:
        reports = bench_mod.run_many(args.quantities, args.sizes, strategies, args.reps, args.seed)
    except bench_mod.StrategyDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    if args.format == "csv":
        out.write(bench_mod.to_csv(reports))
    elif args.format == "json":
        rows = [{"quantity": r.quantity, "n": r.n, "strategy": r.strategy,
                 "median_ns": r.median_ns, "digest": r.digest}
                for rep in reports for r in rep.rows]
        out.write(json.dumps({"rows": _s(rows),
                              "speedup": [{"quantity": rep.case.quantity, "n": rep.case.n,
                                           "direct_over_closed": rep.speedup} for rep in reports]})
                  + "\n")
    else:
        for rep in reports:
            for r in rep.rows:
                out.write(f"{r.quantity:<10} n={r.n:<8} {r.strategy:<12} "
                          f"median={r.median_ns / 1e6:.3f} ms  sha256={r.digest[:16]}\n")
            if rep.speedup is not None:
                out.write(f"{rep.case.quantity:<10} n={rep.case.n:<8} speedup x{rep.speedup:.1f}\n")
    return EXIT_OK


COMMANDS = {
    "seq": cmd_seq,
    "vector-norm": cmd_vector_norm,
    "matrix-norm": cmd_matrix_norm,
    "verify": cmd_verify,
    "threshold-p": cmd_threshold,
    "distance": cmd_distance,
    "bench": cmd_bench,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        with _precision_env(args.precision):
            prec = resolve_precision()
            with mpmath.workprec(prec):
                return COMMANDS[args.command](args, out)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run in-process and capture stdout; handy for tests and scripts."""
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()
