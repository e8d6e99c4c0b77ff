"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import dimension
from .abtype import (
    AbelianType,
    FactorizationBudgetError,
    FreeRankError,
    GroupSpecError,
    format_type,
    ordered_subtypes,
    partitions_of,
    type_from_matrix,
    type_from_spec,
)
from .latoracle import (
    DEFAULT_ORDER_BUDGET,
    ExplicitGroup,
    OracleBudgetError,
    lattice,
    oracle_cudim,
    oracle_usdim,
)
from .ordinal import ord_format
from .suite import PROPERTIES, SuiteConfig, UnknownSuiteError, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MAX_TABLE_SIZE = 30

CATALOG_GRAMMAR = 'descriptor := "Z^" n | "Prufer(" p ")" ["^" m] | "SS_inf(" p ")"'


class UsageError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


def parse_descriptor(text: str) -> dimension.InfiniteDescriptor:
    s = re.sub(r"\s+", "", text)
    try:
        if m := re.fullmatch(r"Z\^(\d+)", s):
            return dimension.Free(int(m.group(1)))
        if m := re.fullmatch(r"Prufer\((\d+)\)(?:\^(\d+))?", s):
            return dimension.Prufer(int(m.group(1)), int(m.group(2) or 1))
        if m := re.fullmatch(r"SS_inf\((\d+)\)", s):
            return dimension.InfHomogeneousSemisimple(int(m.group(1)))
    except ValueError as e:
        raise UsageError(f"{e}; {CATALOG_GRAMMAR}") from None
    raise UsageError(f"unknown descriptor {text!r}; {CATALOG_GRAMMAR}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _oracle_compare(t: AbelianType, budget: int) -> dict:
    g = ExplicitGroup.from_type(t, budget)
    lat = lattice(g)
    oc, ou = oracle_cudim(lat), oracle_usdim(lat)
    return {
        "group": str(g),
        "subgroups": len(lat),
        "cudim": oc.to_json(),
        "usdim": ou.to_json(),
        "agrees": oc == dimension.cudim(t) and ou == dimension.usdim(t),
    }


def _read_type(args) -> AbelianType:
    if args.matrix:
        try:
            with open(args.matrix) as fh:
                mat = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read matrix file: {e}") from None
        if not (isinstance(mat, list) and all(isinstance(r, list) for r in mat)
                and all(isinstance(x, int) and not isinstance(x, bool) for r in mat for x in r)):
            raise UsageError("matrix file must be a JSON array of arrays of integers")
        try:
            return type_from_matrix(mat)
        except FreeRankError as e:
            raise UsageError(f"{e}; use the 'catalog' command for Z^n") from None
    if args.spec is None:
        raise UsageError("give a group spec such as 'Z4+Z2' or --matrix FILE")
    return type_from_spec(args.spec)


def cmd_dim(args) -> int:
    t = _read_type(args)
    rep = dimension.report(t)
    code = EXIT_OK
    if args.oracle:
        cmp = _oracle_compare(t, args.oracle_budget)
        rep = dimension.DimensionReport(**{**rep.__dict__, "oracle": cmp})
        code = EXIT_OK if cmp["agrees"] else EXIT_FAIL
    _emit(args, {"command": "dim", "report": rep.to_json()}, rep.to_text())
    return code


def cmd_catalog(args) -> int:
    rep = dimension.catalog(parse_descriptor(args.descriptor))
    _emit(args, {"command": "catalog", "report": rep.to_json()}, rep.to_text())
    return EXIT_OK


def cmd_subtypes(args) -> int:
    t = type_from_spec(args.spec)
    subs = ordered_subtypes(t)
    rows = [{"type": mu.to_json(), "cudim": dimension.cudim(mu).to_json()} for mu in subs]
    text = "\n".join(f"{format_type(mu):24} cudim {ord_format(dimension.cudim(mu))}" for mu in subs)
    _emit(args, {"command": "subtypes", "of": t.to_json(), "subtypes": rows}, text)
    return EXIT_OK


def table_rows(prime: int, max_size: int) -> list[dict]:
    rows = []
    for w in range(1, max_size + 1):
        for lam in partitions_of(w):
            t = AbelianType(((prime, lam),))
            rows.append({
                "partition": list(lam),
                "type": format_type(t),
                "cudim": dimension.cudim(t),
                "usdim": dimension.usdim(t),
                "u_dim": len(lam),
                "length": w,
            })
    return rows


def cmd_table(args) -> int:
    if args.max_size > MAX_TABLE_SIZE:
        raise BudgetError(f"--max-size {args.max_size} exceeds table budget {MAX_TABLE_SIZE}")
    if args.max_size < 0:
        raise UsageError("--max-size must be >= 0")
    try:
        AbelianType(((args.prime, (1,)),))
    except ValueError as e:
        raise UsageError(str(e)) from None
    rows = table_rows(args.prime, args.max_size)
    lines = [f"{'partition':16} {'type':16} {'cudim':>6} {'usdim':>6} {'u_dim':>6} {'length':>6}"]
    for r in rows:
        lines.append(
            f"{str(tuple(r['partition'])):16} {r['type']:16} {ord_format(r['cudim']):>6}"
            f" {ord_format(r['usdim']):>6} {r['u_dim']:>6} {r['length']:>6}"
        )
    payload = {
        "command": "table",
        "prime": args.prime,
        "max_size": args.max_size,
        "rows": [{**r, "cudim": r["cudim"].to_json(), "usdim": r["usdim"].to_json()} for r in rows],
    }
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = None if args.all or not args.suite else args.suite
    cfg = SuiteConfig(
        rng_seed=args.seed,
        suites=suites,
        oracle_order_budget=args.oracle_budget,
        max_ptype_size=args.max_ptype_size,
    )
    rep = run_suite(cfg)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(rep.dumps(include_timing=args.timings) + "\n")
    _emit(args, {"command": "verify", "report": rep.to_json(args.timings)}, rep.to_text())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_oracle_check(args) -> int:
    t = type_from_spec(args.spec)
    cmp = _oracle_compare(t, args.oracle_budget)
    fast = {"cudim": dimension.cudim(t).to_json(), "usdim": dimension.usdim(t).to_json()}
    text = (
        f"module: {format_type(t)} ({cmp['group']}, {cmp['subgroups']} subgroups)\n"
        f"cudim: fast {fast['cudim']['str']}, oracle {cmp['cudim']['str']}\n"
        f"usdim: fast {fast['usdim']['str']}, oracle {cmp['usdim']['str']}\n"
        + ("agreement" if cmp["agrees"] else "DISAGREEMENT")
    )
    _emit(args, {"command": "oracle-check", "type": t.to_json(), "fast": fast, "oracle": cmp}, text)
    return EXIT_OK if cmp["agrees"] else EXIT_FAIL


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # shared so global flags work before or after the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=["text", "json"], default=d("text"))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--oracle-budget", type=int, default=d(DEFAULT_ORDER_BUDGET))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="couniserial",
        description="Couniserial/uniserial dimension of finite abelian groups.",
        parents=[_global_flags(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    g = [_global_flags(True)]

    p = sub.add_parser("dim", parents=g, help="dimension report for a group spec or matrix")
    p.add_argument("spec", nargs="?", help="group spec, e.g. 'Z4+Z2' or 'Z8+Z2^3'")
    p.add_argument("--matrix", help="JSON integer relation matrix (presents Z^r / column span)")
    p.add_argument("--oracle", action="store_true", help="also evaluate on the subgroup lattice")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("catalog", parents=g, help="closed-form values for infinite modules")
    p.add_argument("descriptor", help="Z^n, Prufer(p)^m or SS_inf(p)")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("subtypes", parents=g, help="list subgroup types with their cudim")
    p.add_argument("spec")
    p.set_defaults(func=cmd_subtypes)

    p = sub.add_parser("table", parents=g, help="dimension table over p-group partitions")
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--max-size", type=int, default=5)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=g, help="run the property suites")
    p.add_argument("--all", action="store_true", help="run every suite (default)")
    p.add_argument("--suite", action="append", choices=sorted(PROPERTIES))
    p.add_argument("--max-ptype-size", type=int, default=10)
    p.add_argument("--output", help="also write the JSON report to this file")
    p.add_argument("--timings", action="store_true", help="include elapsed times in JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-check", parents=g, help="compare fast path with the lattice oracle")
    p.add_argument("spec")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (OracleBudgetError, BudgetError, FactorizationBudgetError) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GroupSpecError, UnknownSuiteError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
