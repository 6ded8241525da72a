"""Command line front end.

Exit codes: 0 success, 1 negative verdict, 2 bad input, 3 the two sides of a
cross-check disagree (a bug).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arrows import arrow_table, compute_all_dismantling_intervals, is_interval_dismantling_context_side
from .dismantle import PrimalityOracle, di_core
from .dot import to_dot
from .errors import ContextError, IntervalError, LatticeError
from .io import read_context
from .lattice import enumerate_concepts
from .verify import run_checks

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3


def _dump(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)


def _load(args):
    return read_context(args.file, args.format)


def cmd_concepts(args) -> int:
    lattice = enumerate_concepts(_load(args))
    n = len(lattice)
    if args.json:
        print(_dump({"count": n, "concepts": [lattice.describe(c) for c in range(n)]}))
        return EXIT_OK
    print(f"{n} concept" + ("" if n == 1 else "s"))
    if args.list:
        for c in range(n):
            d = lattice.describe(c)
            print("{" + ", ".join(d["extent"]) + "}  {" + ", ".join(d["intent"]) + "}")
    return EXIT_OK


def cmd_arrows(args) -> int:
    table = arrow_table(_load(args))
    if args.json:
        print(_dump({
            "up": sorted(map(list, table.up)),
            "down": sorted(map(list, table.down)),
            "double": sorted(map(list, table.double)),
        }))
    else:
        print(table.render())
    return EXIT_OK


def cmd_intervals(args) -> int:
    context = _load(args)
    found = compute_all_dismantling_intervals(context)
    if args.json:
        print(_dump(found.to_json()))
        return EXIT_OK
    lattice = enumerate_concepts(context)
    print(f"{len(found)} dismantling interval" + ("" if len(found) == 1 else "s"))
    for g, m, iv in found.intervals(lattice):
        print(f"  [γ{g}, μ{m}]  {iv.members(lattice).bit_count()} concepts")
    return EXIT_OK


def cmd_check(args) -> int:
    context = _load(args)
    verdict = is_interval_dismantling_context_side(context, args.object, args.attribute)
    print(f"[γ{args.object}, μ{args.attribute}]: " + ("dismantling" if verdict else "not dismantling"))
    if args.oracle:
        lattice = enumerate_concepts(context)
        u = lattice.object_concept(args.object)
        v = lattice.attribute_concept(args.attribute)
        expected = PrimalityOracle(lattice).strict(u, v)
        print("lattice oracle: " + ("dismantling" if expected else "not dismantling"))
        if expected != verdict:
            print("oracle disagreement", file=sys.stderr)
            return EXIT_INCONSISTENT
        print("agreement: yes")
    return EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_dicore(args) -> int:
    context = _load(args)
    lattice = enumerate_concepts(context)
    seed = args.seed
    trace = di_core(lattice, seed=seed)
    print(f"order: {'lectic' if seed is None else f'seed {seed}'}")
    print(f"core: {len(trace.core)} concepts, {len(trace.steps)} steps")
    if args.trace:
        Path(args.trace).write_text(_dump(trace.to_json()) + "\n", encoding="utf-8")
    if args.check_unique:
        seeds = list(range(args.check_unique))
        print("seeds: " + " ".join(map(str, seeds)))
        cores = {di_core(lattice, seed=s).core_ids for s in seeds}
        cores.add(trace.core_ids)
        if len(cores) != 1:
            print("cores identical: no")
            return EXIT_INCONSISTENT
        print("cores identical: yes")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_checks(_load(args))
    width = max(len(r.name) for r in results)
    for r in results:
        status = "pass" if r.passed else ("FAIL" if r.gating else "info")
        print(f"{r.name.ljust(width)}  {status}  ({r.checked} checked)")
        for message in r.failures[:5]:
            print(f"    {message}")
    return EXIT_OK if all(r.passed for r in results if r.gating) else EXIT_INCONSISTENT


def cmd_render(args) -> int:
    context = _load(args)
    lattice = enumerate_concepts(context)
    highlight = 0
    if args.highlight:
        g, sep, m = args.highlight.partition(":")
        if not sep:
            raise ContextError("--highlight expects g:m")
        if not context.incident(g, m):
            raise ContextError(f"({g!r}, {m!r}) is not an incidence, so γ{g} is not below μ{m}")
        highlight = lattice.interval(lattice.object_concept(g), lattice.attribute_concept(m))
    text = to_dot(lattice, highlight, name=Path(args.file).stem)
    if args.dot:
        Path(args.dot).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dismantle", description="Dismantling intervals of concept lattices.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="context file (.cxt or .csv)")
        p.add_argument("--format", choices=("cxt", "csv"), help="override the format given by the extension")
        p.set_defaults(handler=handler)
        return p

    p = verb("concepts", cmd_concepts, "count or list the formal concepts")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="print the count only (default)")
    mode.add_argument("--list", action="store_true", help="also list extent/intent pairs in lectic order")
    mode.add_argument("--json", action="store_true")

    p = verb("arrows", cmd_arrows, "arrow relations")
    p.add_argument("--json", action="store_true")

    p = verb("intervals", cmd_intervals, "all dismantling intervals, computed on the context")
    p.add_argument("--json", action="store_true")

    p = verb("check", cmd_check, "is [γg, μm] dismantling?")
    p.add_argument("-g", "--object", required=True)
    p.add_argument("-a", "--attribute", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check against the lattice-side test")

    p = verb("dicore", cmd_dicore, "iterate removals down to the DI-core")
    order = p.add_mutually_exclusive_group()
    order.add_argument("--seed", type=int, help="pick each removal at random with this seed")
    order.add_argument("--order", choices=("lectic",), default="lectic",
                       help="always remove the first interval by generator pair (default)")
    p.add_argument("--trace", metavar="OUT.json", help="write the removal trace as JSON")
    p.add_argument("--check-unique", type=int, metavar="K", help="rerun with seeds 0..K-1 and compare cores")

    verb("verify", cmd_verify, "run the cross-check suite on one context")

    p = verb("render", cmd_render, "Graphviz diagram of the concept lattice")
    p.add_argument("--dot", metavar="OUT.dot", help="output file (default: stdout)")
    p.add_argument("--highlight", metavar="g:m", help="fill the nodes of [γg, μm]")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ContextError, LatticeError, IntervalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
