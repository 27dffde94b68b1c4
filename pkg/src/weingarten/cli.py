"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (pole, cap, failed check),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import PoleError, Poly, RationalFunction, rf_eval
from .brauer import dimension_identity_check, double_factorial, enumerate_pairings, pairing_distance
from .errors import CapExceededError
from .golden import golden_orthogonal
from .orthogonal import (
    OrthoMomentQuery,
    evaluate_moment_orthogonal,
    gram_times_wg_is_identity,
    moment_orthogonal,
    moment_symplectic,
    orthogonal_subleading_order,
    wg_orthogonal,
    wg_orthogonal_character_form,
    wg_orthogonal_leading,
    wg_symplectic,
)
from .symmetric import format_partition, parse_partition, partitions_of
from .unitary import UnitaryMomentQuery, moment_unitary, unitary_subleading_order, unitary_table, wg_unitary_leading
from .verification import Z_LIMIT, parse_query, random_queries, rows_table, verify

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


def _indices(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("indices are 1-based")
    return vals


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weingarten", description="Exact Weingarten calculus and Haar moments.")
    verbs = parser.add_subparsers(dest="verb", required=True)

    wg = verbs.add_parser("wg", help="Weingarten function values")
    wg_groups = wg.add_subparsers(dest="group", required=True)
    wu = wg_groups.add_parser("unitary")
    wu.add_argument("--n", type=_positive, required=True)
    wu.add_argument("--class", dest="cls", type=_partition_arg)
    for name in ("orthogonal", "symplectic"):
        w = wg_groups.add_parser(name)
        w.add_argument("--n", type=_positive, required=True)
        w.add_argument("--type", dest="cls", type=_partition_arg)
    for sub in wg_groups.choices.values():
        sub.add_argument("--at", type=int)
        sub.add_argument("--json", action="store_true")

    mo = verbs.add_parser("moment", help="exact moment of a product of entries")
    mo_groups = mo.add_subparsers(dest="group", required=True)
    mu = mo_groups.add_parser("unitary")
    mu.add_argument("--i", type=_indices, required=True)
    mu.add_argument("--j", type=_indices, required=True)
    mu.add_argument("--ibar", type=_indices, required=True)
    mu.add_argument("--jbar", type=_indices, required=True)
    mu.add_argument("--at", type=_positive)
    mor = mo_groups.add_parser("orthogonal")
    mor.add_argument("--i", type=_indices, required=True)
    mor.add_argument("--j", type=_indices, required=True)
    mor.add_argument("--at", type=_positive)
    ms = mo_groups.add_parser("symplectic", help="--at is the half-dimension: Sp(d) acts on C^(2d)")
    ms.add_argument("--i", type=_indices, required=True)
    ms.add_argument("--j", type=_indices, required=True)
    ms.add_argument("--at", type=_positive, required=True)
    for sub in mo_groups.choices.values():
        sub.add_argument("--json", action="store_true")

    tb = verbs.add_parser("table", help="all Weingarten values for one n")
    tb.add_argument("--group", choices=("unitary", "orthogonal", "symplectic"), required=True)
    tb.add_argument("--n", type=_positive, required=True)
    fmt = tb.add_mutually_exclusive_group()
    fmt.add_argument("--latex", action="store_true")
    fmt.add_argument("--json", action="store_true")

    asy = verbs.add_parser("asymptotics", help="leading terms against the Moebius function")
    asy.add_argument("--group", choices=("unitary", "orthogonal"), required=True)
    asy.add_argument("--n", type=_positive, required=True)
    asy.add_argument("--json", action="store_true")

    ver = verbs.add_parser("verify", help="Monte Carlo check of exact moments")
    ver.add_argument("--group", choices=("unitary", "orthogonal", "symplectic"), required=True)
    ver.add_argument("--d", type=_positive, required=True)
    ver.add_argument("--n", type=_positive, default=4, help="maximum total degree of random queries")
    ver.add_argument("--samples", type=_positive, default=100_000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--count", type=_positive, default=20, help="number of random queries")
    ver.add_argument("--query", action="append", help="i|j|ibar|jbar (unitary) or i|j; repeatable")
    ver.add_argument("--workers", type=_positive, default=1)
    ver.add_argument("--json", action="store_true")

    verbs.add_parser("selftest", help="golden table and structural invariants")
    return parser


def _table(group: str, n: int):
    if group == "unitary":
        return unitary_table(n).entries
    if group == "orthogonal":
        return wg_orthogonal(n).by_coset_type
    return wg_symplectic(n).by_coset_type


def _value_out(f: RationalFunction, at: int | None) -> tuple[str, object]:
    if at is None:
        return f.factored(), f.to_json_obj()
    v = rf_eval(f, at)
    return _frac_str(v), _frac_str(v)


def _cmd_wg(args, out: Callable[[str], None]) -> int:
    entries = _table(args.group, args.n)
    keys = [args.cls] if args.cls is not None else list(entries)
    if args.cls is not None and sum(args.cls) != args.n:
        raise UsageError(f"{format_partition(args.cls)} is not a partition of {args.n}")
    rows = [(k, *_value_out(entries[k], args.at)) for k in keys]
    if args.json:
        out(_dump({"group": args.group, "n": args.n, "at": args.at,
                   "entries": [{"type": list(k), "value": v} for k, _, v in rows]}))
    elif args.cls is not None:
        out(rows[0][1])
    else:
        for k, s, _ in rows:
            out(f"Wg([{format_partition(k)}]) = {s}")
    return 0


def _cmd_moment(args, out) -> int:
    if args.group == "unitary":
        q = UnitaryMomentQuery(args.i, args.j, args.ibar, args.jbar)
        f = moment_unitary(q)
        if args.at is not None:
            if q.max_index > args.at:
                raise UsageError(f"index out of range for U({args.at})")
            value = _frac_str(rf_eval(f, args.at))
            out(_dump({"value": value}) if args.json else value)
        else:
            out(f.to_json() if args.json else f.factored())
        return 0
    q = OrthoMomentQuery(args.i, args.j)
    if args.group == "orthogonal":
        if args.at is None:
            f = moment_orthogonal(q)
            out(f.to_json() if args.json else f.factored())
            return 0
        if q.max_index > args.at:
            raise UsageError(f"index out of range for O({args.at})")
        value = _frac_str(evaluate_moment_orthogonal(q, args.at))
    else:
        if q.max_index > 2 * args.at:
            raise UsageError(f"index out of range for Sp({args.at})")
        value = _frac_str(moment_symplectic(q, args.at))
    out(_dump({"value": value}) if args.json else value)
    return 0


def _cmd_table(args, out) -> int:
    entries = _table(args.group, args.n)
    if args.json:
        out(_dump({"group": args.group, "n": args.n,
                   "entries": [{"type": list(k), "value": f.to_json_obj()} for k, f in entries.items()]}))
        return 0
    if args.latex:
        out("\\begin{align*}")
        items = list(entries.items())
        for idx, (k, f) in enumerate(items):
            end = ",\\\\" if idx < len(items) - 1 else "."
            out(f"\\Wg ([{format_partition(k)}]) &= {f.latex()}{end}")
        out("\\end{align*}")
        return 0
    for k, f in entries.items():
        out(f"Wg([{format_partition(k)}]) = {f.factored()}")
    return 0


def _cmd_asymptotics(args, out) -> int:
    rows = []
    for mu in partitions_of(args.n):
        if args.group == "unitary":
            exponent, coeff = wg_unitary_leading(args.n, mu)
            sub = unitary_subleading_order(args.n, mu)
        else:
            exponent, coeff = wg_orthogonal_leading(args.n, mu)
            sub = orthogonal_subleading_order(args.n, mu)
        rows.append({"type": list(mu), "exponent": exponent, "moebius": coeff, "subleading_order": sub})
    if args.json:
        out(_dump({"group": args.group, "n": args.n, "rows": rows}))
    else:
        for r in rows:
            extra = "" if r["subleading_order"] is None else f"  next term ~ d^{r['subleading_order']}"
            out(f"[{format_partition(r['type'])}]  Wg ~ {r['moebius']} d^-{r['exponent']}{extra}")
    return 0


def _cmd_verify(args, out) -> int:
    if args.query:
        try:
            queries = [parse_query(args.group, t) for t in args.query]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        queries = random_queries(args.group, args.d, args.n, args.count, args.seed)
    try:
        rows = verify(args.group, args.d, queries, args.samples, args.seed, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        out(_dump({"group": args.group, "d": args.d, "seed": args.seed, "z_limit": Z_LIMIT,
                   "rows": [r.to_json_obj() for r in rows]}))
    else:
        out(rows_table(rows))
    return 0 if all(r.ok for r in rows) else 1


def _selftest_checks() -> list[tuple[str, Callable[[], bool]]]:
    def golden():
        return all(wg_orthogonal(sum(mu))[mu] == golden_orthogonal(mu) for n in range(1, 5) for mu in partitions_of(n))

    def symplectic():
        return all(wg_symplectic(n)[mu] == golden_orthogonal(mu).reflect() for n in range(1, 5) for mu in partitions_of(n))

    def unitary_example():
        f = moment_unitary(UnitaryMomentQuery((1, 1), (1, 1), (1, 1), (1, 1)))
        return f == RationalFunction(2, Poly.from_roots([0, -1])) and rf_eval(f, 1) == 1

    def gram_inverse():
        return all(gram_times_wg_is_identity(n) for n in range(1, 5))

    def character_form():
        order = enumerate_pairings(2)
        return all(wg_orthogonal_character_form(2, p, q) == wg_orthogonal(2).entry(p, q) for p in order for q in order)

    def pairings():
        return all(len(enumerate_pairings(n)) == double_factorial(2 * n - 1) and dimension_identity_check(n)
                   for n in range(1, 6))

    def metric():
        ps = enumerate_pairings(3)
        return all(pairing_distance(a, c) <= pairing_distance(a, b) + pairing_distance(b, c)
                   for a in ps for b in ps for c in ps)

    def asymptotics():
        for n in range(1, 5):
            for mu in partitions_of(n):
                wg_unitary_leading(n, mu)
                wg_orthogonal_leading(n, mu)
                if (unitary_subleading_order(n, mu) or -2) > -2:
                    return False
        return True

    return [
        ("orthogonal golden table (11 values)", golden),
        ("symplectic table by d -> -d", symplectic),
        ("unitary four-factor example", unitary_example),
        ("Gram . Wg = I for n <= 4", gram_inverse),
        ("character form = Gram inverse (n = 2)", character_form),
        ("pairing counts and dimension identity", pairings),
        ("pairing distance triangle inequality on P_6", metric),
        ("leading asymptotics n <= 4", asymptotics),
    ]


def _cmd_selftest(args, out) -> int:
    failed = 0
    for name, check in _selftest_checks():
        try:
            ok = bool(check())
        except ArithmeticError:
            ok = False
        failed += not ok
        out(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 1 if failed else 0


_COMMANDS = {
    "wg": _cmd_wg,
    "moment": _cmd_moment,
    "table": _cmd_table,
    "asymptotics": _cmd_asymptotics,
    "verify": _cmd_verify,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str] | None = None, out: Callable[[str], None] = print,
        err: Callable[[str], None] | None = None) -> int:
    err = err or (lambda s: print(s, file=sys.stderr))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.verb](args, out)
    except UsageError as exc:
        err(f"usage error: {exc}")
        return 2
    except (PoleError, CapExceededError) as exc:
        err(f"error: {exc}")
        return 1
    except ValueError as exc:
        err(f"usage error: {exc}")
        return 2


def main() -> None:
    sys.exit(run())
