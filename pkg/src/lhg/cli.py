"""``lhg`` command line.

Exit codes: 0 success, 1 domain verdict false (pattern found under
``--expect-free``, a bound or lemma falsified), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import analysis, constructions, core, search
from .patterns import is_free, named_patterns

log = logging.getLogger("lhg")

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_graph(path: str) -> core.LinearHypergraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return core.loads(text)
    except core.HypergraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _graph_text(g: core.LinearHypergraph, as_json: bool) -> str:
    return g.to_json() + "\n" if as_json else g.serialize()


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _patterns(names_arg: str, r: int):
    names = [s.strip() for s in names_arg.split(",") if s.strip() and s.strip() != "none"]
    try:
        return named_patterns(names, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -----------------------------------------------------


def cmd_gen(args) -> int:
    factors = None
    try:
        if args.kind == "crown-free":
            _need(args, "r", "m")
            g = constructions.crown_free_construction(args.r, args.m, apex_edge=args.apex_edge)
            q2 = (args.r - 1) ** 2 * args.m
            factors = [[i for i, e in enumerate(g.edges) if e[-1] == q2 + j] for j in range(args.r)]
        elif args.kind == "grs":
            _need(args, "m")
            g = constructions.grs_construction(args.m)
        elif args.kind == "td":
            _need(args, "q")
            td = constructions.transversal_design(args.q)
            g = td.graph
            factors = [td.block_ids[a * args.q : (a + 1) * args.q] for a in range(args.q)]
        elif args.kind == "tprime":
            _need(args, "q")
            g = constructions.extend_with_groups(constructions.transversal_design(args.q))
            factors = constructions.one_factorization(g).classes
        else:  # random
            _need(args, "n", "r", "edges")
            g = core.random_linear(args.n, args.r, args.edges, random.Random(args.seed))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.factors:
        if factors is None:
            raise UsageError(f"--factors is not available for gen {args.kind}")
        _emit(json.dumps(factors) + "\n", args.factors)
    _emit(_graph_text(g, args.json), args.output)
    return EXIT_OK


def _need(args, *names) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"gen {args.kind} requires {', '.join(missing)}")


def cmd_check(args) -> int:
    g = _read_graph(args.file)
    res = is_free(g, _patterns(args.patterns, g.r))
    if args.json:
        _dump(
            {
                "free": res.free,
                "pattern": res.pattern,
                "witness": res.witness.to_dict() if res.witness else None,
            }
        )
    elif res.free:
        print("free")
    else:
        print(f"contains {res.pattern}")
        print(json.dumps(res.witness.to_dict()))
    if args.expect_free and not res.free:
        return EXIT_FALSE
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = _read_graph(args.file)
    try:
        reports = analysis.bound_reports(g, args.theorem, assume_free=args.assume_free)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _dump([rep.to_dict() for rep in reports])
    else:
        print(f"n={g.n} r={g.r} edges={g.m} free={reports[0].free if reports else None}")
        for rep in reports:
            verdict = {True: "ok", False: "VIOLATED", None: "-"}[rep.satisfied]
            s = "-" if rep.s is None else rep.s
            print(f"{rep.theorem:<20} s={s:<4} bound={str(rep.bound_value):<10} {verdict}")
    falsified = [rep for rep in reports if rep.falsified]
    if falsified:
        _write_artifact(g, args.artifact_dir, "bound")
        return EXIT_FALSE
    return EXIT_OK


def cmd_lemma(args) -> int:
    g = _read_graph(args.file)
    if g.r < 3:
        raise UsageError(f"lemma check needs r >= 3, got r={g.r}")
    reports = analysis.lemma1_reports(g, assume_free=args.assume_free)
    if args.json:
        _dump([rep.to_dict() for rep in reports])
    else:
        if not reports:
            print("no sites")
        for rep in reports:
            flags = "".join("ok " if h else "FAIL " for h in rep.conclusions_hold)
            print(f"edge {rep.edge_id} {list(rep.edge)}: |S|={rep.S_size} maxdeg={rep.max_degree_in_S} |E_S|={rep.E_S_size} {flags.strip()}")
    if any(rep.falsified for rep in reports):
        _write_artifact(g, args.artifact_dir, "lemma")
        return EXIT_FALSE
    return EXIT_OK


def _write_artifact(g, directory: str, kind: str) -> None:
    path = analysis.save_counterexample(g, kind, directory)
    print(f"counterexample written to {path}", file=sys.stderr)


def cmd_search(args) -> int:
    pats = _patterns(args.patterns, args.r) if args.r >= 3 else []
    if args.r < 3 and args.patterns not in ("", "none"):
        raise UsageError("named patterns need r >= 3")
    try:
        cfg = search.SearchConfig(
            args.n,
            args.r,
            pats,
            edge_budget=args.edge_budget,
            time_budget=args.time_budget,
            parallel=args.parallel,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = search.exact_turan(cfg)
    out = args.output or f"ex_n{args.n}_r{args.r}.lhg"
    Path(out).write_text(res.witness.serialize())
    if args.json:
        payload = res.to_dict()
        payload["patterns"] = [p.name for p in pats]
        _dump(payload)
    else:
        tag = "exact" if res.exact else "lower bound (budget hit)"
        print(f"max_edges={res.max_edges} ({tag}) nodes={res.nodes_explored} witness={out}")
    return EXIT_OK


def cmd_fmt(args) -> int:
    g = _read_graph(args.file)
    _emit(_graph_text(g, args.json), args.output)
    return EXIT_OK


# -- parser ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lhg", description="Linear hypergraphs and generalized crowns.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a construction")
    g.add_argument("kind", choices=["crown-free", "grs", "td", "tprime", "random"])
    g.add_argument("--r", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--edges", type=int, help="edge target for gen random")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--apex-edge", action="store_true", help="join the apexes into one more edge")
    g.add_argument("--factors", metavar="FILE", help="write parallel classes as JSON ('-' for stdout)")
    g.add_argument("-o", "--output")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="test a graph for forbidden patterns")
    c.add_argument("file")
    c.add_argument("--patterns", default="crown,cstar")
    c.add_argument("--expect-free", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bounds", help="check the edge-count bounds")
    b.add_argument("file")
    b.add_argument("--theorem", choices=["twzz", "thm3", "all"], default="all")
    b.add_argument("--assume-free", action="store_true")
    b.add_argument("--artifact-dir", default=".")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    lm = sub.add_parser("lemma", help="verify the local-structure lemma at every site")
    lm.add_argument("file")
    lm.add_argument("--assume-free", action="store_true")
    lm.add_argument("--artifact-dir", default=".")
    lm.add_argument("--json", action="store_true")
    lm.set_defaults(func=cmd_lemma)

    s = sub.add_parser("search", help="exact linear Turan number by exhaustive search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--patterns", default="crown,cstar")
    s.add_argument("--edge-budget", type=int)
    s.add_argument("--time-budget", type=float)
    s.add_argument("--parallel", action="store_true")
    s.add_argument("-o", "--output", help="witness path (default ex_n<N>_r<R>.lhg)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)

    f = sub.add_parser("fmt", help="canonicalize a graph file")
    f.add_argument("file")
    f.add_argument("-o", "--output")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fmt)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lhg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
