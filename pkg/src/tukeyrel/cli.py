"""Command-line interface.

Subcommands: delta, skeleton, morphism, classify, construct.  Standard
output carries only the documented payload; diagnostics go to stderr.
Exit codes: 0 on success (including a `no` morphism answer), 1 on domain
failures such as unreadable or malformed input, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import census as census_mod
from . import construct as construct_mod
from .invariants import delta_str, dominating_number, dual_dominating_number
from .morphism import NodeLimitExceeded, SolverConfig, find_morphism, render_witness
from .relation import CapacityError, ParseError, Relation, parse_relation, serialize_relation
from .skeleton import render_trace, skeleton, skeleton_randomized


def _load(path: str) -> Relation:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise RuntimeError(f"cannot read {path}: {exc}") from exc
    return parse_relation(text)


def _cmd_delta(args) -> int:
    r = _load(args.file)
    print(f"delta={delta_str(dominating_number(r))} "
          f"delta_dual={delta_str(dual_dominating_number(r))}")
    return 0


def _cmd_skeleton(args) -> int:
    r = _load(args.file)
    result, trace = skeleton(r)
    print(serialize_relation(result))
    if args.trace:
        rendered = render_trace(trace)
        if rendered:
            print(rendered)
    if args.randomize:
        report = skeleton_randomized(r, seed=args.seed, trials=args.trials)
        print(f"trials={report.trials} distinct={len(report.outcomes)} "
              f"agreement={'yes' if report.matches_deterministic else 'no'}")
        for outcome, count in report.outcomes:
            rows_hex = ":".join(format(v, "x") for v in outcome.rows)
            print(f"count={count} shape={outcome.n_minus}x{outcome.n_plus} "
                  f"rows_hex={rows_hex}")
    return 0


def _cmd_morphism(args) -> int:
    a = _load(args.file_a)
    b = _load(args.file_b)
    cfg = SolverConfig(shortcuts_enabled=not args.no_shortcuts)
    w = find_morphism(a, b, cfg)
    if w is None:
        print("no")
    else:
        print("yes")
        if args.witness:
            print(render_witness(w))
    return 0


def _cmd_classify(args) -> int:
    out = Path(args.out)
    if args.max_order > census_mod.MAX_CENSUS_ORDER:
        if not args.allow_large:
            raise RuntimeError(
                f"orders beyond {census_mod.MAX_CENSUS_ORDER} need --allow-large")
        print(f"warning: order {args.max_order} census may run a very long time",
              file=sys.stderr)
    skeletons = census_mod.enumerate_skeletal(
        args.max_order, jobs=args.jobs, allow_large=args.allow_large)
    catalog = census_mod.build_catalog(skeletons, jobs=args.jobs)
    out.mkdir(parents=True, exist_ok=True)
    census_mod.emit_catalog_csv(catalog, out / "catalog.csv")
    census_mod.emit_hasse_dot(catalog, out / "hasse.dot")
    census_mod.emit_skeleton_files(catalog, out / "skeletons")
    print(f"skeletons={len(catalog.skeletons)} classes={len(catalog.classes)} "
          f"out={out}")
    return 0


def _cmd_construct(args) -> int:
    if args.kind == "ladder":
        r = construct_mod.ladder(args.n)
    elif args.kind == "cn":
        r = construct_mod.c_n(args.n)
    else:
        if args.k is None:
            print("error: construct cnk needs N and K", file=sys.stderr)
            return 2
        r = construct_mod.c_nk(args.n, args.k)
    print(serialize_relation(r))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tukeyrel",
        description="Tukey morphisms between finite binary relations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", help="dominating number and dual dominating number")
    p.add_argument("file")
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("skeleton", help="skeleton reduction")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print deletion rounds")
    p.add_argument("--randomize", action="store_true",
                   help="probe random single-point deletion orders")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_skeleton)

    p = sub.add_parser("morphism", help="decide whether a morphism exists")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--witness", action="store_true", help="print witness maps on yes")
    p.add_argument("--no-shortcuts", action="store_true",
                   help="full search without invariant shortcuts")
    p.set_defaults(func=_cmd_morphism)

    p = sub.add_parser("classify", help="census, catalog, and class diagram")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-large", action="store_true",
                   help="permit orders beyond the documented census limit")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("construct", help="generate a family member")
    p.add_argument("kind", choices=["ladder", "cn", "cnk"])
    p.add_argument("n", type=int)
    p.add_argument("k", type=int, nargs="?")
    p.set_defaults(func=_cmd_construct)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CapacityError, NodeLimitExceeded, ValueError,
            RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
