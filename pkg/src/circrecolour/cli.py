"""Command-line interface.

Exit codes: 0 yes/ok, 1 no (with certificate), 2 invalid colouring,
3 unsupported parameters, 64 usage, 65 parse error, 69 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from .chromatic_cycles import (
    FailureWitness,
    colour_sparse_cycles,
    count_cycles_mod_k,
    cycle_threshold,
    cycles_mod_k,
)
from .circular import CircularColouring, CircularParams, format_colouring, parse_colouring, verify_colouring
from .errors import (
    BudgetExceeded,
    ColourOutOfRange,
    DomainMismatch,
    InvalidColouring,
    InvalidKSequence,
    ParamOutOfRange,
    ParseError,
    RIsZero,
)
from .graph import Cycle, Graph, format_graph, parse_graph
from .hardness import NotAProperColouring, build_reduction, lift_sequence
from .oracle import DEFAULT_BUDGET, components_summary, oracle_distance
from .recolour import CycleWeightMismatch, FixedPathMismatch, FixedVertexMismatch, Verdict, recolour

EXIT_OK, EXIT_NO, EXIT_INVALID, EXIT_PARAMS = 0, 1, 2, 3
EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET = 64, 65, 69

log = logging.getLogger("circrecolour")

_NAMED = re.compile(r"^([KPC])(\d+)$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# ------------------------------------------------------------------ inputs

def load_graph(spec: str) -> Graph:
    """A graph file, or one of the named families ``Kn``, ``Pn``, ``Cn``
    when no file of that name exists."""
    path = Path(spec)
    if not path.exists():
        m = _NAMED.match(spec)
        if m is None:
            raise UsageError(f"no such graph file: {spec}")
        kind, n = m.group(1), int(m.group(2))
        if kind == "C" and n < 3:
            raise UsageError("named cycles need at least 3 vertices")
        return {"K": Graph.complete, "P": Graph.path, "C": Graph.cycle}[kind](n)
    try:
        return parse_graph(path.read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from None


def load_colouring(path: str, params: Optional[CircularParams] = None) -> CircularColouring:
    try:
        c = parse_colouring(Path(path).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    if params is not None and c.params != params:
        raise UsageError(f"{path} declares parameters {c.params}, expected {params}")
    return c


def _params(args, required: bool = True) -> Optional[CircularParams]:
    if args.p is None and args.q is None and not required:
        return None
    if args.p is None or args.q is None:
        raise UsageError("-p and -q must be given together")
    if args.p < 1 or args.q < 1:
        raise UsageError("p and q must be positive")
    try:
        return CircularParams(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_k_colouring(path: str, k: int) -> tuple[int, ...]:
    c = load_colouring(path)
    if c.params.q != 1 or c.params.p != k:
        raise UsageError(f"{path} must hold a {k}-colouring (header `colouring {k} 1 n`)")
    return c.colours


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    c = load_colouring(args.colouring, _params(args, required=False))
    bad = verify_colouring(g, c)
    if bad is not None:
        print(f"violation e {bad[0]} {bad[1]}")
        return EXIT_INVALID
    print("ok")
    return EXIT_OK


def _relabel_cycle(cyc: Cycle, ids) -> Cycle:
    return Cycle(tuple(ids[v] for v in cyc.vertices))


def _relabel_certificate(cert, ids):
    if isinstance(cert, FixedVertexMismatch):
        return FixedVertexMismatch(ids[cert.vertex], _relabel_cycle(cert.cycle, ids), cert.f_colour, cert.g_colour)
    if isinstance(cert, CycleWeightMismatch):
        return CycleWeightMismatch(_relabel_cycle(cert.cycle, ids), cert.f_weight, cert.g_weight)
    return FixedPathMismatch(
        tuple(ids[v] for v in cert.path), cert.f_weight, cert.g_weight,
        _relabel_cycle(cert.start_cycle, ids), _relabel_cycle(cert.end_cycle, ids),
    )


def reconfigure(g: Graph, f: CircularColouring, target: CircularColouring) -> Verdict:
    """Run :func:`recolour` on each connected component and combine: the
    sequences are concatenated in component order, and the first
    component without one supplies the certificate."""
    steps = []
    for comp in g.components():
        sub = g.induced_subgraph(comp)
        verdict = recolour(sub, f.restricted(comp), target.restricted(comp))
        if not verdict.reconfigurable:
            return Verdict(certificate=_relabel_certificate(verdict.certificate, comp))
        steps.extend(type(s)(comp[s.vertex], s.colour) for s in verdict.sequence)
    return Verdict(sequence=tuple(steps))


def cmd_reconfigure(args) -> int:
    params = _params(args)
    if not params.below_four:
        print(
            f"p/q = {params.p}/{params.q} is at least 4; use `reduce` or `oracle` for this regime",
            file=sys.stderr,
        )
        return EXIT_PARAMS
    g = load_graph(args.graph)
    f = load_colouring(args.source, params)
    target = load_colouring(args.target, params)
    for name, c in (("--from", f), ("--to", target)):
        bad = verify_colouring(g, c)
        if bad is not None:
            print(f"{name}: violation e {bad[0]} {bad[1]}", file=sys.stderr)
            return EXIT_INVALID
    verdict = reconfigure(g, f, target)
    log.info("components=%d result=%s", len(g.components()), "yes" if verdict.reconfigurable else "no")
    _emit(_json(verdict.to_dict()), args.out)
    return EXIT_OK if verdict.reconfigurable else EXIT_NO


def cmd_oracle(args) -> int:
    params = _params(args)
    g = load_graph(args.graph)
    if args.components:
        if args.source or args.target:
            raise UsageError("--components excludes --from/--to")
        print(components_summary(g, params, args.budget))
        return EXIT_OK
    if not (args.source and args.target):
        raise UsageError("give --components or both --from and --to")
    f = load_colouring(args.source, params)
    target = load_colouring(args.target, params)
    for name, c in (("--from", f), ("--to", target)):
        bad = verify_colouring(g, c)
        if bad is not None:
            print(f"{name}: violation e {bad[0]} {bad[1]}", file=sys.stderr)
            return EXIT_INVALID
    dist = oracle_distance(g, params, f, target, args.budget, args.threads)
    doc = {"result": "no"} if dist is None else {"result": "yes", "distance": dist}
    _emit(_json(doc), args.out)
    return EXIT_NO if dist is None else EXIT_OK


def _reduction(args):
    params = _params(args)
    if params.below_four:
        raise ParamOutOfRange(f"p/q = {params.p}/{params.q} is below 4; use `reconfigure`")
    g = load_graph(args.graph)
    f = _load_k_colouring(args.source, params.k)
    target = _load_k_colouring(args.target, params.k)
    return build_reduction(g, f, target, params)


def cmd_reduce(args) -> int:
    red = _reduction(args)
    prefix = args.out_prefix
    Path(f"{prefix}.graph").write_text(format_graph(red.g_prime))
    Path(f"{prefix}.alpha").write_text(format_colouring(red.alpha))
    Path(f"{prefix}.beta").write_text(format_colouring(red.beta))
    Path(f"{prefix}.meta.json").write_text(_json(red.metadata()))
    log.info("G' has %d vertices and %d edges", red.g_prime.n, red.g_prime.m)
    return EXIT_OK


def cmd_lift(args) -> int:
    red = _reduction(args)
    try:
        doc = json.loads(Path(args.ksteps).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.ksteps}: {exc}") from None
    ksteps = doc["sequence"] if isinstance(doc, dict) else doc
    lifted = lift_sequence(red, ksteps)
    _emit(_json({"sequence": [[s.vertex, s.colour] for s in lifted]}), args.out)
    return EXIT_OK


def cmd_cycles(args) -> int:
    g = load_graph(args.graph)
    if args.k < 2:
        raise UsageError("k must be at least 2")
    if args.list:
        found = cycles_mod_k(g, args.k, args.budget)
        for cyc in found:
            print("cycle " + " ".join(map(str, cyc.vertices)))
        count = len(found)
    else:
        count = count_cycles_mod_k(g, args.k, args.budget)
    threshold = cycle_threshold(args.k)
    verdict = "below" if count < threshold else "at-or-above"
    print(f"count={count} threshold={threshold} verdict={verdict}")
    return EXIT_OK


def cmd_sparse_colour(args) -> int:
    g = load_graph(args.graph)
    if not 3 <= args.k <= 8:
        raise UsageError("k must lie in 3..8")
    result = colour_sparse_cycles(g, args.k)
    if isinstance(result, FailureWitness):
        doc = {
            "result": "failure",
            "step": result.step,
            "edge": list(result.edge),
            "count": result.count,
            "threshold": str(result.threshold),
            "order": [list(e) for e in result.order],
            "cycles": [list(c.vertices) for c in result.detail.cycles],
        }
        _emit(_json(doc), args.out)
        return EXIT_NO
    _emit(format_colouring(CircularColouring(CircularParams(args.k, 1), result)), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circrecolour", description="Reconfiguration of circular colourings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_arg(sp):
        sp.add_argument("--graph", required=True, help="graph file, or Kn / Pn / Cn")

    def pq(sp, required):
        sp.add_argument("-p", type=int, required=required)
        sp.add_argument("-q", type=int, required=required)

    def pair(sp, required=True):
        sp.add_argument("--from", dest="source", required=required)
        sp.add_argument("--to", dest="target", required=required)

    sp = sub.add_parser("verify", help="check a colouring")
    graph_arg(sp)
    sp.add_argument("--colouring", required=True)
    pq(sp, False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reconfigure", help="decide reconfigurability for p/q < 4")
    graph_arg(sp)
    pair(sp)
    pq(sp, True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reconfigure)

    sp = sub.add_parser("oracle", help="exhaustive configuration-graph search")
    graph_arg(sp)
    pair(sp, required=False)
    pq(sp, True)
    sp.add_argument("--components", action="store_true")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_oracle)

    for name, func, help_text in (
        ("reduce", cmd_reduce, "build the (p, q) instance for a k-colouring instance"),
        ("lift", cmd_lift, "lift a k-colouring sequence to the reduced instance"),
    ):
        sp = sub.add_parser(name, help=help_text)
        graph_arg(sp)
        pair(sp)
        pq(sp, True)
        if name == "reduce":
            sp.add_argument("--out-prefix", required=True)
        else:
            sp.add_argument("--ksteps", required=True, help="JSON list of [vertex, colour] or {\"sequence\": ...}")
            sp.add_argument("--out")
        sp.set_defaults(func=func)

    sp = sub.add_parser("cycles", help="count cycles of length divisible by k")
    graph_arg(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_cycles)

    sp = sub.add_parser("sparse-colour", help="k-colour a graph edge by edge")
    graph_arg(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sparse_colour)
    return parser


def _configure_logging():
    level = os.environ.get("RECOLOUR_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(levels.get(level, logging.ERROR))
    log.propagate = False


def main(argv: Optional[Sequence[str]] = None) -> int:
    _configure_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "threads", 1) < 1 or (getattr(args, "budget", None) or 1) < 1:
        print("circrecolour: error: --threads and --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"circrecolour: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"circrecolour: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"circrecolour: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainMismatch, ColourOutOfRange, InvalidColouring, NotAProperColouring, InvalidKSequence) as exc:
        print(f"circrecolour: invalid colouring: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParamOutOfRange, RIsZero) as exc:
        print(f"circrecolour: unsupported parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
