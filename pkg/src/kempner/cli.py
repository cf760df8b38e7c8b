"""Command-line interface.

Subcommands expose the certified computations and the exact verification
suites::

    kempner limits s2
    kempner converge s2 --k 2..8 --n 1000000 --format json
    kempner partial word:11 --k 1 --n 7
    kempner bw 11 --eval 1
    kempner verify split --b 2 --k 2 --j 3
    kempner transfer --b 10

Statistics are written ``s2`` (alias ``sb:2``), ``sb:<base>`` or
``word:<w>``.  Exit status: 0 on success, 1 when a computation or a
verification check fails, 2 on usage errors.

All numeric output is rendered from exact integers or outward-rounded
enclosure endpoints as fixed-point decimal strings, so repeated runs --
with any ``--workers`` value -- produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import product
from typing import Optional

from . import exact, filters, series
from .enclosure import decimal_digits, decimal_string
from .logratio import log_expression
from .words import parse_statistic, render_statistic

__all__ = ["main"]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fraction_repr(value: Fraction, digits: int = 30, max_len: int = 120) -> str:
    """Exact ``p/q`` when reasonably short, else a decimal rendering wide
    enough to diagnose a mismatch."""
    text = str(value)
    if len(text) <= max_len:
        return text
    return "~" + decimal_string(value, digits, round_up=False)


def _parse_k_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        if sep:
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise ValueError(f"bad k range {text!r}; expected K or LO..HI") from None


# ---------------------------------------------------------------------------
# subcommand implementations, each returning (exit_code, text)
# ---------------------------------------------------------------------------


def _cmd_limits(args) -> tuple[int, str]:
    spec = parse_statistic(args.spec)
    enc = series.limit_value(spec, args.precision)
    digits = decimal_digits(args.precision)
    lo, hi = enc.decimal_bounds(digits)
    record = {
        "spec": render_statistic(spec),
        "precision": args.precision,
        "limit_lo": lo,
        "limit_hi": hi,
    }
    if args.format == "json":
        return 0, json.dumps(record, indent=2) + "\n"
    if args.format == "csv":
        return 0, "spec,precision,limit_lo,limit_hi\n" + ",".join(
            [record["spec"], str(args.precision), lo, hi]
        ) + "\n"
    return 0, (
        f"spec: {record['spec']}\nprecision: {args.precision}\n"
        f"limit_lo: {lo}\nlimit_hi: {hi}\n"
    )


_ROW_KEYS = (
    "spec", "k", "N", "value_lo", "value_hi", "tail_bound",
    "limit_lo", "limit_hi", "gap_lo", "gap_hi",
)


def _cmd_converge(args) -> tuple[int, str]:
    spec = parse_statistic(args.spec)
    ks = _parse_k_range(args.k)
    digits = decimal_digits(args.precision)
    rows = []
    for result in series.convergence_table(spec, ks, args.n, args.precision, args.workers):
        value_lo, value_hi = result.value.decimal_bounds(digits)
        limit_lo, limit_hi = result.limit.decimal_bounds(digits)
        gap_lo, gap_hi = result.gap.decimal_bounds(digits)
        rows.append({
            "spec": render_statistic(result.spec),
            "k": result.k,
            "N": result.N,
            "value_lo": value_lo,
            "value_hi": value_hi,
            "tail_bound": decimal_string(result.tail_bound, digits, round_up=True),
            "limit_lo": limit_lo,
            "limit_hi": limit_hi,
            "gap_lo": gap_lo,
            "gap_hi": gap_hi,
        })
    if args.format == "json":
        return 0, json.dumps(rows, indent=2) + "\n"
    if args.format == "csv":
        lines = [",".join(_ROW_KEYS)]
        lines += [",".join(str(row[key]) for key in _ROW_KEYS) for row in rows]
        return 0, "\n".join(lines) + "\n"
    if not rows:
        return 0, "empty range\n"
    lines = []
    for row in rows:
        lines.append(f"k={row['k']} N={row['N']} spec={row['spec']}")
        for key in _ROW_KEYS[3:]:
            lines.append(f"  {key}: {row[key]}")
    return 0, "\n".join(lines) + "\n"


def _cmd_partial(args) -> tuple[int, str]:
    spec = parse_statistic(args.spec)
    value = exact.partial_sum_exact(exact.ClassQuery(spec, args.k, args.n))
    record = {
        "spec": render_statistic(spec),
        "k": args.k,
        "N": args.n,
        "sum": str(value),
        "decimal": decimal_string(value, 30, round_up=False),
    }
    if args.format == "json":
        return 0, json.dumps(record, indent=2) + "\n"
    if args.format == "csv":
        return 0, "spec,k,N,sum,decimal\n" + ",".join(
            [record["spec"], str(args.k), str(args.n), record["sum"], record["decimal"]]
        ) + "\n"
    return 0, (
        f"spec: {record['spec']}\nk: {args.k}\nN: {args.n}\n"
        f"sum: {record['sum']}\ndecimal: {record['decimal']}\n"
    )


def _cmd_bw(args) -> tuple[int, str]:
    expr = log_expression(args.word)
    s0, s1, s2 = expr.coefficient_sums()
    digits = decimal_digits(args.precision)
    record = {
        "word": expr.word,
        "terms": expr.canonical_text(),
        "rational_function": expr.rational_function_text(),
        "sign_sum": str(s0),
        "scale_sum": str(s1),
        "offset_sum": str(s2),
        "remainder_constant": str(expr.remainder_constant()),
    }
    if args.eval is not None:
        enc = expr.evaluate(args.eval, args.precision)
        lo, hi = enc.decimal_bounds(digits)
        record["eval_n"] = args.eval
        record["eval_lo"] = lo
        record["eval_hi"] = hi
    if args.format == "json":
        return 0, json.dumps(record, indent=2) + "\n"
    if args.format == "csv":
        keys = list(record)
        return 0, ",".join(keys) + "\n" + ",".join(str(record[key]) for key in keys) + "\n"
    return 0, "".join(f"{key}: {value}\n" for key, value in record.items())


def _check_entry(name: str, ok: bool, lhs: str = "", rhs: str = "") -> dict:
    entry = {"name": name, "ok": ok}
    if lhs or rhs:
        entry["lhs"] = lhs
        entry["rhs"] = rhs
    return entry


def _verify_split(args) -> list[dict]:
    selectors = (args.b, args.k, args.j)
    if any(s is not None for s in selectors):
        if any(s is None for s in selectors):
            raise ValueError("the split suite needs all of --b, --k and --j (or none)")
        check = exact.split_identity_check(args.b, args.k, args.j)
        return [_check_entry(
            f"split b={args.b} k={args.k} J={args.j}", check.ok,
            _fraction_repr(check.lhs), _fraction_repr(check.rhs),
        )]
    entries = []
    for b, k, J in product(range(2, 6), range(1, 7), range(1, 7)):
        check = exact.split_identity_check(b, k, J)
        entry = _check_entry(f"split b={b} k={k} J={J}", check.ok)
        if not check.ok:
            entry["lhs"] = _fraction_repr(check.lhs)
            entry["rhs"] = _fraction_repr(check.rhs)
        entries.append(entry)
    return entries


def _verify_vsum(args) -> list[dict]:
    if args.b is not None or args.n is not None:
        if args.b is None or args.n is None:
            raise ValueError("the vsum suite needs both --b and --n (or neither)")
        check = exact.vsum_identity_check(args.b, args.n)
        return [_check_entry(
            f"vsum b={args.b} N={args.n}", check.ok,
            _fraction_repr(check.lhs), _fraction_repr(check.rhs),
        )]
    return [
        _check_entry(f"vsum b={b} N<=500", exact.vsum_identity_sweep(b, 500))
        for b in range(2, 11)
    ]


def _verify_qw(args) -> list[dict]:
    maxlen = args.maxlen
    entries = []
    for length in range(1, maxlen + 1):
        failures = []
        for bits in product("01", repeat=length):
            word = "".join(bits)
            expr = log_expression(word)
            s0, s1, s2 = expr.coefficient_sums()
            target = Fraction(-1, 1 << length)
            offsets_ok = all(0 <= t.offset <= (1 << t.scale_exp) for t in expr.terms)
            if not (s0 == 0 and s1 == 0 and s2 == target and offsets_ok):
                failures.append(_check_entry(
                    f"qw word={word}", False, f"({s0}, {s1}, {s2})", f"(0, 0, {target})",
                ))
        entries.append(_check_entry(
            f"qw |w|={length} ({1 << length} words)", not failures,
        ))
        entries.extend(failures)
    return entries


def _verify_transfer(args) -> list[dict]:
    entries = []
    for b in range(3, 13):
        poly = filters.transfer_polynomial(b)
        modulus = filters.max_root_modulus(poly, args.precision)
        hi = modulus.hi_fraction()
        entries.append(_check_entry(
            f"transfer roots b={b}", hi < 1,
            decimal_string(hi, 20, round_up=True), "1",
        ))
        expanded = filters.Polynomial((Fraction(-1), Fraction(1))) * poly
        expected = filters.Polynomial(tuple([Fraction(-(b - 1))] + [Fraction(1)] * (b - 1)))
        entries.append(_check_entry(
            f"transfer expansion b={b}", expanded == expected,
        ))
    return entries


def _verify_partition(args) -> list[dict]:
    entries = []
    for b in (2, 3):
        for J in range(1, 11):
            check = exact.class_partition_check(b, J)
            entry = _check_entry(f"partition b={b} J={J}", check.ok)
            if not check.ok:
                entry["lhs"] = _fraction_repr(check.lhs)
                entry["rhs"] = _fraction_repr(check.rhs)
            entries.append(entry)
    return entries


_SUITES = {
    "split": _verify_split,
    "vsum": _verify_vsum,
    "qw": _verify_qw,
    "transfer": _verify_transfer,
    "partition": _verify_partition,
}


def _cmd_verify(args) -> tuple[int, str]:
    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for suite in suites:
        checks.extend(_SUITES[suite](args))
    failed = sum(1 for c in checks if not c["ok"])
    report = {
        "suite": args.suite,
        "checks": checks,
        "passed": len(checks) - failed,
        "failed": failed,
    }
    code = 1 if failed else 0
    if args.format == "json":
        return code, json.dumps(report, indent=2) + "\n"
    if args.format == "csv":
        lines = ["name,ok,lhs,rhs"]
        lines += [
            ",".join([c["name"], str(c["ok"]), c.get("lhs", ""), c.get("rhs", "")])
            for c in checks
        ]
        return code, "\n".join(lines) + "\n"
    lines = [
        f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}"
        + (f"  lhs={c['lhs']} rhs={c['rhs']}" if "lhs" in c else "")
        for c in checks
    ]
    lines.append(f"passed {report['passed']} failed {failed}")
    return code, "\n".join(lines) + "\n"


def _cmd_transfer(args) -> tuple[int, str]:
    poly = filters.transfer_polynomial(args.b)
    analysis = filters.root_analysis(poly, args.precision)
    digits = decimal_digits(args.precision)
    lo, hi = analysis.max_modulus.decimal_bounds(digits)
    roots = []
    for z in analysis.roots:
        re_q, im_q = filters._mpc_parts(z)
        roots.append({
            "re": decimal_string(re_q, 30, round_up=False),
            "im": decimal_string(im_q, 30, round_up=False),
        })
    record = {
        "b": args.b,
        "polynomial": str(poly),
        "coefficients": [str(c) for c in poly.coefficients],
        "roots": roots,
        "pairing_radius": decimal_string(analysis.radius, 30, round_up=True),
        "max_modulus_lo": lo,
        "max_modulus_hi": hi,
        "max_modulus_below_1": analysis.max_modulus.hi_fraction() < 1,
    }
    code = 0 if record["max_modulus_below_1"] else 1
    if args.format == "json":
        return code, json.dumps(record, indent=2) + "\n"
    if args.format == "csv":
        lines = ["b,polynomial,pairing_radius,max_modulus_lo,max_modulus_hi,max_modulus_below_1"]
        lines.append(",".join([
            str(args.b), str(poly), record["pairing_radius"], lo, hi,
            str(record["max_modulus_below_1"]),
        ]))
        return code, "\n".join(lines) + "\n"
    lines = [f"b: {args.b}", f"polynomial: {poly}"]
    lines += [f"root: {r['re']} + {r['im']}i" for r in roots]
    lines += [
        f"pairing_radius: {record['pairing_radius']}",
        f"max_modulus_lo: {lo}",
        f"max_modulus_hi: {hi}",
        f"max_modulus_below_1: {record['max_modulus_below_1']}",
    ]
    return code, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(sub, n_default: Optional[int] = None) -> None:
    sub.add_argument("--precision", type=int, default=128, help="working precision in bits")
    sub.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sub.add_argument("--out", default=None, help="write the report to this path")
    if n_default is not None:
        sub.add_argument("--n", type=int, default=n_default, help="summation range bound")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kempner",
        description="Certified digit-restricted harmonic sums and their limits.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("limits", help="closed-form limit of the class sums")
    sub.add_argument("spec", help="s2, sb:<base> or word:<w>")
    _add_common(sub)
    sub.set_defaults(func=_cmd_limits)

    sub = subs.add_parser("converge", help="certified per-k table with gaps to the limit")
    sub.add_argument("spec")
    sub.add_argument("--k", required=True, help="single k or inclusive range LO..HI")
    sub.add_argument("--workers", type=int, default=1)
    _add_common(sub, n_default=10**6)
    sub.set_defaults(func=_cmd_converge)

    sub = subs.add_parser("partial", help="exact rational class partial sums")
    sub.add_argument("spec")
    sub.add_argument("--k", type=int, required=True)
    _add_common(sub, n_default=10**6)
    sub.set_defaults(func=_cmd_partial)

    sub = subs.add_parser("bw", help="log-ratio expression attached to a binary word")
    sub.add_argument("word")
    sub.add_argument("--eval", type=int, default=None, metavar="N", help="evaluate at n = N")
    _add_common(sub)
    sub.set_defaults(func=_cmd_bw)

    sub = subs.add_parser("verify", help="exact identity and invariant suites")
    sub.add_argument("suite", choices=sorted(_SUITES) + ["all"])
    sub.add_argument("--b", type=int, default=None)
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--j", type=int, default=None)
    sub.add_argument("--maxlen", type=int, default=8)
    _add_common(sub, n_default=None)
    sub.add_argument("--n", type=int, default=None)
    sub.set_defaults(func=_cmd_verify)

    sub = subs.add_parser("transfer", help="filter polynomial roots, certified")
    sub.add_argument("--b", type=int, required=True)
    _add_common(sub)
    sub.set_defaults(func=_cmd_transfer)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except ValueError as err:
        parser.exit(2, f"{parser.prog}: error: {err}\n")
    except ArithmeticError as err:
        print(f"{parser.prog}: computation failed: {err}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
