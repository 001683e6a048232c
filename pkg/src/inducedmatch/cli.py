"""Command-line entry point.

Exit codes: 0 success, 1 bad input or precondition, 2 guarantee or
verification failure, 3 branch-and-bound budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from .bounds import conjecture_scan, corollary_check
from .engine import (
    DEFAULT_EXACT_THRESHOLD,
    TheoremViolation,
    bounded_induced_matching,
    verify_trace,
)
from .families import family, random_max_deg4
from .graph import Graph, GraphError
from .graphio import encode_graph6, encode_report, parse_graph, parse_graph6
from .matching import (
    DEFAULT_NODE_BUDGET,
    BudgetExhausted,
    exact_max_induced_matching,
    find_violation,
)

EXIT_OK, EXIT_INPUT, EXIT_GUARANTEE, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _add_source(p: argparse.ArgumentParser, random_ok: bool = False) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", metavar="LINE", help="inline graph6 line")
    src.add_argument("--file", metavar="PATH", help="graph6 or edge-list file, '-' for stdin")
    src.add_argument("--family", metavar="NAME",
                     help="c5sq, k33plus, h, doubleh, tripend or blown:a,b,c,d,e")
    if random_ok:
        src.add_argument("--random", action="store_true",
                         help="seeded random graph with maximum degree 4")


def _add_random_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=20, help="order of random graphs")
    p.add_argument("--density", type=Fraction, default=Fraction(1, 2))
    p.add_argument("--seed", type=int, default=0)


def _graph(args: argparse.Namespace, stdin: TextIO) -> Graph:
    if args.g6 is not None:
        return parse_graph6(args.g6)
    if args.family is not None:
        return family(args.family)
    if getattr(args, "random", False):
        return random_max_deg4(args.n, args.density, args.seed)
    return parse_graph(_read(args.file, stdin))


def _parse_edges(text: str) -> list[tuple[int, int]]:
    edges = []
    for chunk in text.split(","):
        toks = chunk.split()
        if not toks:
            continue
        if len(toks) != 2 or not all(t.isdigit() for t in toks):
            raise InputError(f"bad edge token {chunk.strip()!r}")
        edges.append((int(toks[0]), int(toks[1])))
    return edges


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inducedmatch",
        description="Induced matchings in graphs of maximum degree at most 4.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="run the reduction engine and report the bound")
    _add_source(p, random_ok=True)
    _add_random_opts(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--exact-threshold", type=int, default=DEFAULT_EXACT_THRESHOLD)
    p.add_argument("--no-fallback", dest="fallback", action="store_false",
                   help="fail instead of solving exactly when no reduction is found")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("exact", help="maximum induced matching by branch and bound")
    _add_source(p, random_ok=True)
    _add_random_opts(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("verify", help="check that an edge list is an induced matching")
    _add_source(p)
    p.add_argument("--edges", required=True, help='edges as "u v,u v,..."')
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="emit a named or random graph as graph6")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", metavar="NAME")
    src.add_argument("--random", action="store_true")
    _add_random_opts(p)
    p.add_argument("--count", type=int, default=1,
                   help="number of random graphs, seeds seed..seed+count-1")

    p = sub.add_parser("scan", help="smallest 17*nu_s/m over a file of graph6 lines")
    p.add_argument("--file", metavar="PATH", required=True, help="'-' for stdin")
    p.add_argument("--no-exact", dest="use_exact", action="store_false")
    p.add_argument("--exact-limit", type=int, default=24)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return parser


def _cmd_bound(args, g: Graph, out: TextIO, err: TextIO) -> int:
    res = bounded_induced_matching(
        g,
        exact_threshold=args.exact_threshold,
        fallback_exact=args.fallback,
        node_budget=args.node_budget,
    )
    check = verify_trace(g, res.trace, res.matching)
    bad = find_violation(g, res.matching.edges)
    r = res.report
    if args.json:
        out.write(encode_report(r, res.matching, res.trace))
    else:
        out.write(
            f"n={r.n} m={r.m} isolated={r.isolated} c5sq={r.c5sq}\n"
            f"matching_size={r.matching_size} "
            f"guarantee 9*{r.matching_size} >= {r.guarantee_rhs}: {r.guarantee_ok}\n"
            f"m/20: {r.m20_ok}  m/18: "
            f"{r.m18_ok if r.m18_applicable else 'n/a'}  "
            f"17*size/m: {r.conjecture_ratio if r.conjecture_ratio is not None else 'n/a'}\n"
            f"steps={len(res.trace.steps)} fallbacks={res.trace.fallbacks} "
            f"trace_ok={bool(check)}\n"
            f"matching: {' '.join(f'{a}-{b}' for a, b in res.matching)}\n"
        )
    if bad is not None or not check or not r.guarantee_ok or not corollary_check(r):
        print(f"error: guarantee check failed: {bad or check.detail}", file=err)
        return EXIT_GUARANTEE
    return EXIT_OK


def _cmd_exact(args, g: Graph, out: TextIO) -> int:
    m = exact_max_induced_matching(g, args.node_budget)
    if args.json:
        out.write(json.dumps({"n": g.n, "m": g.m, "strong_matching": len(m),
                              "matching": [list(e) for e in m]}, indent=2) + "\n")
    else:
        out.write(f"strong_matching={len(m)}\n"
                  f"matching: {' '.join(f'{a}-{b}' for a, b in m)}\n")
    return EXIT_OK


def _cmd_verify(args, g: Graph, out: TextIO) -> int:
    edges = _parse_edges(args.edges)
    bad = find_violation(g, edges)
    if args.json:
        out.write(json.dumps({"valid": bad is None,
                              "witness": None if bad is None else str(bad)}) + "\n")
    else:
        out.write("valid\n" if bad is None else f"invalid: {bad}\n")
    return EXIT_OK if bad is None else EXIT_INPUT


def _cmd_gen(args, out: TextIO) -> int:
    if args.family is not None:
        out.write(encode_graph6(family(args.family)) + "\n")
        return EXIT_OK
    for seed in range(args.seed, args.seed + args.count):
        out.write(encode_graph6(random_max_deg4(args.n, args.density, seed)) + "\n")
    return EXIT_OK


def _cmd_scan(args, stdin: TextIO, out: TextIO) -> int:
    graphs = []
    for lineno, line in enumerate(_read(args.file, stdin).splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            graphs.append(parse_graph6(line))
        except GraphError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    summary = conjecture_scan(graphs, args.use_exact, args.exact_limit, args.jobs)
    if args.json:
        out.write(json.dumps(summary.to_dict(), indent=2) + "\n")
    else:
        d = summary.to_dict()
        out.write(f"scanned={d['scanned']} skipped={len(d['skipped'])}\n"
                  f"min 17*nu_s/m = {d['min_ratio']} at {d['argmin_graph6']} "
                  f"({'exact' if summary.min_is_exact else 'lower estimate'})\n"
                  f"counterexample={summary.counterexample}\n")
        for s in d["skipped"]:
            out.write(f"skipped {s['graph6']}: {s['reason']}\n")
    return EXIT_OK


def run_cli(
    argv: Sequence[str] | None = None,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args, out)
        if args.command == "scan":
            return _cmd_scan(args, stdin, out)
        g = _graph(args, stdin)
        if args.command == "bound":
            return _cmd_bound(args, g, out, err)
        if args.command == "exact":
            return _cmd_exact(args, g, out)
        return _cmd_verify(args, g, out)
    except (ValueError, InputError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except TheoremViolation as exc:
        print(f"error: {exc}", file=err)
        return EXIT_GUARANTEE
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
