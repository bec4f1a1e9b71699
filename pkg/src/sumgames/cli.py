"""Command-line entry point.

Exit codes: 0 true / ok / verified, 1 false / counterexample / finding,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import harness
from .core import SizeCapExceeded, SumGamesError, parse_labeled_graph, to_document, to_dot
from .figure1 import EXPECTED_FAILURES, EXPECTED_N, EXPECTED_PHI, figure1_graph
from .morphism import (
    BoundExceeded,
    NegativeCycleReachable,
    NotSatisfying,
    compute_n,
    failure_kind,
    load_assignment,
    phi_fixpoint,
    phi_paper,
    verify_morphism,
)
from .objective import reduce_finocc, satisfies
from .solver import METHODS, GuardExceeded, solve
from .universal import (
    build_fragment,
    check_monotonicity,
    format_tuple,
    is_edge,
    order_gt,
    parse_tuple,
)

OK, FALSE, USAGE = 0, 1, 2

# options whose values may start with '-'
_SIGNED_OPTIONS = ("--weights", "--input")


class UsageError(SumGamesError):
    pass


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str):
    return parse_labeled_graph(_read(path), "graph")


def _arena(path: str):
    return parse_labeled_graph(_read(path), "arena")


def parse_int_list(text: str) -> list[int]:
    """``a..b`` (inclusive) or a comma-separated list of integers."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected integers as 'a..b' or 'a,b,c', got {text!r}") from None


def _tuple(text: str):
    try:
        return parse_tuple(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _witness(edges) -> list:
    return [e.to_json() for e in edges] if edges else []


# subcommands


def cmd_satisfies(args) -> int:
    verdict = satisfies(_graph(args.graph))
    _dump({"satisfies": verdict.satisfies, "witness": _witness(verdict.witness), "witness_weight": verdict.witness_weight})
    return OK if verdict else FALSE


def cmd_nvalues(args) -> int:
    _dump(compute_n(_graph(args.graph)).to_json())
    return OK


def cmd_phi(args) -> int:
    graph = _graph(args.graph)
    if args.method == "paper":
        morphism = phi_paper(graph)
    else:
        morphism = phi_fixpoint(graph, args.max_len, args.max_coord)
    _dump(morphism.to_json())
    return OK if morphism.ok else FALSE


def cmd_verify(args) -> int:
    graph = _graph(args.graph)
    try:
        assignment = load_assignment(_read(args.morphism))
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad morphism document: {exc}") from None
    missing = [v for v in graph.vertices if v not in assignment]
    if missing:
        raise UsageError("assignment misses vertices: " + ", ".join(missing))
    morphism = verify_morphism(graph, assignment)
    doc = morphism.to_json()
    doc["report"] = [
        {"edge": c.edge.to_json(), "holds": c.holds, "reason": c.reason} for c in morphism.report
    ]
    _dump(doc)
    return OK if morphism.ok else FALSE


def cmd_figure1(args) -> int:
    graph = figure1_graph()
    if args.check:
        nmap = compute_n(graph)
        literal = phi_paper(graph)
        fixpoint = phi_fixpoint(graph)
        failures = literal.failures
        for e in failures:
            kind = failure_kind(graph, nmap, e, literal.assignment) or "unexplained"
            print(f"{e.src} -[{e.weight}]-> {e.dst}: {format_tuple(literal.assignment[e.src])} -> "
                  f"{format_tuple(literal.assignment[e.dst])} ({kind})")
        expected = (
            dict(nmap.values) == EXPECTED_N
            and literal.assignment == EXPECTED_PHI
            and tuple(failures) == EXPECTED_FAILURES
            and fixpoint.ok
        )
        print("figure1: as expected" if expected else "figure1: differs from the expected values")
        return OK if expected else FALSE
    if args.dot:
        print(to_dot(graph, highlight=EXPECTED_FAILURES, name="figure1"), end="")
        return OK
    _dump({
        "graph": to_document(graph),
        "n": EXPECTED_N,
        "phi": {v: format_tuple(u) for v, u in EXPECTED_PHI.items()},
        "failures": [e.to_json() for e in EXPECTED_FAILURES],
    })
    return OK


def cmd_order(args) -> int:
    u, v = _tuple(args.u), _tuple(args.v)
    if order_gt(u, v):
        print(">")
        return OK
    print("=" if u == v else "<")
    return FALSE


def cmd_edge(args) -> int:
    holds = is_edge(_tuple(args.u), args.weight, _tuple(args.v))
    print("edge" if holds else "no-edge")
    return OK if holds else FALSE


def cmd_fragment(args) -> int:
    frag = build_fragment(args.max_len, args.max_coord, parse_int_list(args.weights))
    if args.dot:
        print(to_dot(frag.graph, name="fragment"), end="")
    else:
        doc = to_document(frag.graph)
        doc["max_len"], doc["max_coord"], doc["weights"] = frag.max_len, frag.max_coord, list(frag.weight_set)
        _dump(doc)
    return OK


def cmd_monotone(args) -> int:
    frag = build_fragment(args.max_len, args.max_coord, parse_int_list(args.weights))
    bad = check_monotonicity(frag)
    if bad is None:
        _dump({"monotone": True, "vertices": len(frag.vertices), "edges": len(frag.edges)})
        return OK
    _dump({
        "monotone": False,
        "counterexample": {
            "u": format_tuple(bad.u), "v": format_tuple(bad.v), "weight": bad.weight,
            "v2": format_tuple(bad.v2), "u2": format_tuple(bad.u2),
        },
        "message": str(bad),
    })
    return FALSE


def cmd_reduce(args) -> int:
    values = parse_int_list(args.input)
    if not values:
        raise UsageError("--input needs at least one natural number")
    try:
        word = reduce_finocc(values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(",".join(str(w) for w in word))
    return OK


def cmd_solve(args) -> int:
    arena = _arena(args.arena)
    sol = solve(arena, args.method)
    if args.json:
        _dump(sol.to_json(arena))
    elif args.dot:
        chosen = list(sol.eve_strategy.choice.values()) + list(sol.adam_strategy.choice.values())
        print(to_dot(arena, highlight=chosen, name="solution"), end="")
    else:
        order = arena.vertices
        print("eve_region:", " ".join(v for v in order if v in sol.eve_region) or "-")
        print("adam_region:", " ".join(v for v in order if v in sol.adam_region) or "-")
        for label, strat in (("eve", sol.eve_strategy), ("adam", sol.adam_strategy)):
            for v, e in strat.choice.items():
                print(f"{label}: {v} -> {e.dst} [{e.weight}]")
        print("certified:", "yes" if sol.certified else "no")
        for note in sol.notes:
            print("note:", note)
    return OK if sol.certified else FALSE


def cmd_harness(args) -> int:
    config = harness.CampaignConfig(
        max_vertices=args.max_vertices,
        weight_set=tuple(parse_int_list(args.weights)),
        max_out_degree=args.max_out_degree,
        mode="random" if args.random else "exhaustive",
        sample_count=args.samples,
        seed=args.seed,
        cap=args.cap,
        mutate=args.mutate,
        max_findings=args.max_findings,
        workers=args.workers,
        symmetry_reduce=not args.no_symmetry,
    )
    summary = harness.run_campaign(config, replay_dir=args.replay_dir)
    print(summary.dumps())
    return OK if not summary.findings else FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumgames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("satisfies", help="does every cycle have weight >= 1")
    p.add_argument("graph")
    p.set_defaults(func=cmd_satisfies)

    p = sub.add_parser("nvalues", help="n(v) for every vertex")
    p.add_argument("graph")
    p.set_defaults(func=cmd_nvalues)

    p = sub.add_parser("phi", help="tuple labelling of a satisfying graph")
    p.add_argument("graph")
    p.add_argument("--method", choices=("paper", "fixpoint"), default="paper")
    p.add_argument("--max-len", type=int)
    p.add_argument("--max-coord", type=int)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify-morphism", help="check a labelling edge by edge")
    p.add_argument("graph")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure1", help="built-in worked example")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--dot", action="store_true")
    g.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("order", help="compare two tuples in U")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("edge", help="is u -w-> v an edge of U")
    p.add_argument("u")
    p.add_argument("weight", type=int)
    p.add_argument("v")
    p.set_defaults(func=cmd_edge)

    for name, func, text in (
        ("fragment", cmd_fragment, "finite fragment of U"),
        ("monotone", cmd_monotone, "check monotonicity of a fragment"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--max-len", type=int, required=True)
        p.add_argument("--max-coord", type=int, required=True)
        p.add_argument("--weights", required=True, help="a..b or a,b,c")
        if name == "fragment":
            p.add_argument("--dot", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("reduce", help="difference word of a natural sequence")
    p.add_argument("--input", required=True, help="comma-separated naturals")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="solve a game")
    p.add_argument("arena")
    p.add_argument("--method", choices=METHODS, default="brute")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("harness", help="certification campaign")
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--weights", default="-1,0,1")
    p.add_argument("--max-out-degree", type=int, default=2)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--random", action="store_true")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cap", type=int)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--replay-dir", default="sumgames-findings")
    p.add_argument("--mutate", choices=METHODS, help="weaken one solver (negative control)")
    p.add_argument("--max-findings", type=int)
    p.add_argument("--no-symmetry", action="store_true", help="keep every vertex renaming")
    p.set_defaults(func=cmd_harness)
    return parser


def _join_signed(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for arg in it:
        if arg in _SIGNED_OPTIONS:
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_join_signed(argv))
    try:
        return args.func(args)
    except (NotSatisfying, NegativeCycleReachable) as exc:
        print(f"sumgames: {exc}", file=sys.stderr)
        return FALSE
    except BoundExceeded as exc:
        print(f"sumgames: {exc}", file=sys.stderr)
        return FALSE
    except (UsageError, GuardExceeded, SizeCapExceeded, harness.CampaignCapExceeded, ValueError) as exc:
        print(f"sumgames: {exc}", file=sys.stderr)
        return USAGE
    except SumGamesError as exc:
        print(f"sumgames: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
