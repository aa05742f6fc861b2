"""Command-line surface: identity verification, search, algebra, catalog."""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import CatalogError, append_instances, export_lines, read_records
from .cyclotomic import IntPoly
from .identities import run_checks
from .periods import (
    gaussian_periods,
    jacobi_sum,
    period_polynomial,
    period_system,
    polynomial_discriminant,
    resolvent_power,
)
from .search import (
    FILTER_NAMES,
    NodeBudgetExceeded,
    SearchConfig,
    search,
)
from .squares import two_squares_representable

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _print(line: str, out) -> None:
    out.write(line + "\n")


# ---------------------------------------------------------------------------
# verify-paper


def cmd_verify(args) -> int:
    results = run_checks(corrupt=args.corrupt)
    out = sys.stdout
    for res in results:
        if args.json:
            _print(json.dumps(
                {"name": res.name, "pass": res.passed,
                 "expected": res.expected, "actual": res.actual},
                separators=(",", ":"),
            ), out)
        else:
            status = "ok" if res.passed else "FAIL"
            _print(f"[{status:>4}] {res.name}", out)
    failed = [r.name for r in results if not r.passed]
    if failed:
        _print(f"failed: {', '.join(failed)}", sys.stderr)
        return EXIT_VERIFY_FAILED
    if not args.json:
        _print(f"{len(results)} checks passed", out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def _instance_table_line(inst) -> str:
    vals = "(" + ",".join(str(v) for v in inst.values) + ")"
    tags = ",".join(inst.tags)
    return "\t".join([
        vals, str(inst.m), str(inst.block_sum), str(inst.sum_squares),
        str(inst.gap), tags, inst.provenance,
    ])


def cmd_search(args) -> int:
    filters = tuple(f.replace("-", "_") for f in (args.filter or ()))
    try:
        config = SearchConfig(
            k=args.k, m=args.m, lo=args.min, hi=args.max,
            distinct=args.distinct, filters=filters,
            limit=args.limit, jobs=args.jobs,
            equal_size=args.equal_size, node_budget=args.node_budget,
        )
    except ValueError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_USAGE

    sink = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    emitted = []
    status = EXIT_OK
    try:
        if args.format == "table":
            _print("tuple\tm\tblock_sum\tsum_squares\tgap\ttags\tprovenance", sink)
        for inst in search(config):
            emitted.append(inst)
            if args.format == "jsonl":
                _print(inst.to_json_line(), sink)
            else:
                _print(_instance_table_line(inst), sink)
    except NodeBudgetExceeded as exc:
        _print(f"aborted: {exc}; {len(emitted)} partial results emitted", sys.stderr)
        status = EXIT_BUDGET
    finally:
        if args.out:
            sink.close()

    if args.db:
        generator = (f"search(k={args.k},m={args.m},range=[{args.min},{args.max}],"
                     f"distinct={args.distinct},filters={list(filters)})")
        append_instances(args.db, emitted, generator)
    return status


# ---------------------------------------------------------------------------
# algebra


def cmd_algebra_periods(args) -> int:
    try:
        sys_ = period_system(args.p, args.e, enforce_limits=not args.allow_large)
    except ValueError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_USAGE
    etas = gaussian_periods(sys_)
    poly = period_polynomial(sys_)
    disc = polynomial_discriminant(poly)
    exps = [sorted(i for i, c in enumerate(eta.coeffs) if c) for eta in etas]
    if args.json:
        _print(json.dumps({
            "p": sys_.p, "e": sys_.e, "f": sys_.f, "g": sys_.g,
            "periods": exps,
            "polynomial": list(poly.coeffs),
            "discriminant": disc,
        }, separators=(",", ":")), sys.stdout)
    else:
        _print(f"p = {sys_.p}  e = {sys_.e}  f = {sys_.f}  g = {sys_.g}", sys.stdout)
        for j, ee in enumerate(exps):
            _print(f"eta_{j} = " + " + ".join(f"z^{i}" for i in ee), sys.stdout)
        _print(f"period polynomial: {poly}", sys.stdout)
        _print(f"discriminant: {disc}", sys.stdout)
    return EXIT_OK


def cmd_algebra_resolvent(args) -> int:
    try:
        sys_ = period_system(args.p, args.e, enforce_limits=not args.allow_large)
        report = resolvent_power(sys_, args.t)
    except ValueError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_USAGE
    e = sys_.e
    padded = list(report.coeff_tuple) + [0]
    class_sums = [
        sum(padded[i] * padded[(i + d) % e] for i in range(e))
        for d in range(1, (e - 1) // 2 + 1)
    ]
    payload = {
        "p": sys_.p, "e": e, "t": args.t,
        "element": report.power_element.to_text(),
        "coeff_tuple": list(report.coeff_tuple),
        "conj_product": report.conj_product,
        "norm": report.norm,
        "class_sums": class_sums,
        "sum_squares": sum(v * v for v in report.coeff_tuple),
        "canonical_tuple": list(report.canonical_tuple),
        "canonical_signs": list(report.canonical_signs),
    }
    if args.json:
        _print(json.dumps(payload, separators=(",", ":")), sys.stdout)
    else:
        for key, value in payload.items():
            _print(f"{key}: {value}", sys.stdout)
    return EXIT_OK


def cmd_algebra_two_squares(args) -> int:
    if args.n < 0:
        _print("error: n must be nonnegative", sys.stderr)
        return EXIT_USAGE
    rep = two_squares_representable(args.n, seed=args.seed)
    if args.json:
        payload = {"n": rep.n, "representable": rep.representable}
        if rep.witness is not None:
            payload["witness"] = [rep.witness.x, rep.witness.y]
        if rep.offending_prime is not None:
            payload["offending_prime"] = rep.offending_prime
        _print(json.dumps(payload, separators=(",", ":")), sys.stdout)
    elif rep.representable:
        w = rep.witness
        _print(f"{rep.n} = {w.x}^2 + {w.y}^2", sys.stdout)
    else:
        _print(
            f"{rep.n} not representable ({rep.offending_prime} = 3 mod 4 "
            f"to an odd power)", sys.stdout)
    return EXIT_OK


def cmd_algebra_discriminant(args) -> int:
    poly = IntPoly.of(args.coeff)
    if poly.is_zero() or poly.degree < 1:
        _print("error: need a polynomial of degree >= 1", sys.stderr)
        return EXIT_USAGE
    disc = polynomial_discriminant(poly)
    if args.json:
        _print(json.dumps({"polynomial": list(poly.coeffs), "discriminant": disc},
                          separators=(",", ":")), sys.stdout)
    else:
        _print(f"polynomial: {poly}", sys.stdout)
        _print(f"discriminant: {disc}", sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog_list(args) -> int:
    try:
        records = read_records(args.db)
    except CatalogError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_USAGE
    for rec in records:
        vals = "(" + ",".join(str(v) for v in rec.instance.values) + ")"
        _print(f"{rec.key}\t{vals}\t{rec.instance.block_sum}", sys.stdout)
    return EXIT_OK


def cmd_catalog_export(args) -> int:
    try:
        for line in export_lines(args.db):
            _print(line, sys.stdout)
    except CatalogError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycdecomp",
        description="Exact cyclotomic toolkit and balanced-decomposition search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify-paper", help="run the built-in identity suite")
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--corrupt", metavar="CHECK", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="search for balanced decompositions")
    p_search.add_argument("--k", type=int, required=True, help="tuple size")
    p_search.add_argument("--m", type=int, required=True, help="number of blocks")
    p_search.add_argument("--min", type=int, required=True, help="smallest value")
    p_search.add_argument("--max", type=int, required=True, help="largest value")
    p_search.add_argument("--distinct", action="store_true")
    p_search.add_argument("--filter", action="append",
                          choices=[f.replace("_", "-") for f in FILTER_NAMES])
    p_search.add_argument("--equal-size", action="store_true",
                          help="require equal-size blocks")
    p_search.add_argument("--limit", type=int, default=None)
    p_search.add_argument("--jobs", type=int, default=1)
    p_search.add_argument("--node-budget", type=int, default=10**8)
    p_search.add_argument("--format", choices=["jsonl", "table"], default="jsonl")
    p_search.add_argument("--out", metavar="FILE")
    p_search.add_argument("--db", metavar="PATH")
    p_search.set_defaults(func=cmd_search)

    p_algebra = sub.add_parser("algebra", help="cyclotomic computations")
    alg = p_algebra.add_subparsers(dest="subcommand", required=True)

    a_periods = alg.add_parser("periods", help="Gaussian periods and their polynomial")
    a_periods.add_argument("--p", type=int, required=True)
    a_periods.add_argument("--e", type=int, required=True)
    a_periods.add_argument("--json", action="store_true")
    a_periods.add_argument("--allow-large", action="store_true")
    a_periods.set_defaults(func=cmd_algebra_periods)

    a_res = alg.add_parser("resolvent", help="resolvent power report")
    a_res.add_argument("--p", type=int, required=True)
    a_res.add_argument("--e", type=int, required=True)
    a_res.add_argument("--t", type=int, required=True)
    a_res.add_argument("--json", action="store_true")
    a_res.add_argument("--allow-large", action="store_true")
    a_res.set_defaults(func=cmd_algebra_resolvent)

    a_two = alg.add_parser("two-squares", help="sum-of-two-squares classification")
    a_two.add_argument("n", type=int)
    a_two.add_argument("--json", action="store_true")
    a_two.add_argument("--seed", type=int, default=0)
    a_two.set_defaults(func=cmd_algebra_two_squares)

    a_disc = alg.add_parser("discriminant", help="polynomial discriminant")
    a_disc.add_argument("coeff", type=int, nargs="+",
                        help="coefficients, lowest degree first")
    a_disc.add_argument("--json", action="store_true")
    a_disc.set_defaults(func=cmd_algebra_discriminant)

    p_catalog = sub.add_parser("catalog", help="inspect a result catalog")
    cat = p_catalog.add_subparsers(dest="subcommand", required=True)

    c_list = cat.add_parser("list", help="list keys with tuple and block sum")
    c_list.add_argument("--db", required=True)
    c_list.set_defaults(func=cmd_catalog_list)

    c_export = cat.add_parser("export", help="re-emit canonical records")
    c_export.add_argument("--db", required=True)
    c_export.set_defaults(func=cmd_catalog_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())
