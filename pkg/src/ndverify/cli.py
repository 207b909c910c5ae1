"""Command-line entry point: ``ndverify verify|gen|bench``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bench
from .dant import DantSpec, generate
from .layering import compute_layers
from .proofgraph import ProofGraphError, load, save
from .verifier import Strategy, StrategyKind, verify

EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2

STRATEGY_NAMES = [k.value for k in StrategyKind]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _strategy_list(text: str) -> list[StrategyKind]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [n for n in names if n not in STRATEGY_NAMES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown strategies: {', '.join(bad)}")
    return [StrategyKind(n) for n in names]


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndverify",
        description="Verify natural-deduction proof graphs layer by layer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a proof graph JSON file")
    p.add_argument("file")
    p.add_argument("--strategy", choices=STRATEGY_NAMES, default="serial")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--trace", action="store_true", help="dump the layer map")

    g = sub.add_parser("gen", help="generate a DANT proof graph")
    g.add_argument("topology", choices=["straight", "branches", "tree"])
    g.add_argument("--n", type=int)
    g.add_argument("--b", type=int)
    g.add_argument("--h", type=int)
    g.add_argument("--out", required=True)

    b = sub.add_parser("bench", help="run a scaling study and write CSV")
    b.add_argument("study", choices=["strong", "problem"])
    b.add_argument("--topology", choices=["straight", "branches", "tree"], required=True)
    b.add_argument("--n", type=int, help="straight length / branch length")
    b.add_argument("--b", type=int, help="branch count (strong study)")
    b.add_argument("--h", type=int, help="tree height (strong study)")
    b.add_argument(
        "--sizes", type=_int_list,
        help="problem study grid: n (straight), b (branches) or h (tree) values",
    )
    b.add_argument("--strategies", type=_strategy_list, default=list(StrategyKind))
    b.add_argument("--threads", type=_int_list, help="thread counts (problem study: one value)")
    b.add_argument("--reps", type=_positive, default=3)
    b.add_argument("--out", required=True)
    return parser


def cmd_verify(args) -> int:
    try:
        graph = load(Path(args.file).read_bytes())
    except (OSError, ProofGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    if args.trace:
        for line in compute_layers(graph).trace_lines():
            print(line)
    strategy = Strategy(StrategyKind(args.strategy), args.threads)
    if strategy.kind is not StrategyKind.SERIAL:
        bench.oversubscription_warning([args.threads])
    verdict = verify(graph, strategy)
    print("valid" if verdict.valid else "invalid")
    for f in verdict.failures:
        print(f"  node {f.node}: {f.reason.value}")
    s = verdict.stats
    print(
        f"nodes: {len(graph)}  layers processed: {s.layers_processed}  "
        f"nodes verified: {s.nodes_verified}  elapsed: {s.elapsed:.6f} s"
    )
    return EXIT_VALID if verdict.valid else EXIT_INVALID


def _spec_from_args(topology, n, b, h) -> DantSpec:
    return DantSpec(topology, n=n, b=b, h=h)


def cmd_gen(args) -> int:
    try:
        spec = _spec_from_args(args.topology, args.n, args.b, args.h)
        graph = generate(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        Path(args.out).write_bytes(save(graph))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    print(f"wrote {len(graph)} nodes to {args.out}")
    return 0


def _bench_config(args) -> bench.BenchConfig:
    topo = args.topology
    if args.study == "strong":
        spec = bench.default_strong_spec(topo)
        spec = DantSpec(
            topo,
            n=args.n if args.n is not None else spec.n,
            b=args.b if args.b is not None else spec.b,
            h=args.h if args.h is not None else spec.h,
        )
        specs = [spec]
        threads = args.threads or [1, 2, 4, 8]
    else:
        branch_length = args.n if args.n is not None else 100
        if args.sizes:
            if topo == "straight":
                specs = [DantSpec(topo, n=v) for v in args.sizes]
            elif topo == "branches":
                specs = [DantSpec(topo, b=v, n=branch_length) for v in args.sizes]
            else:
                specs = [DantSpec(topo, h=v) for v in args.sizes]
        else:
            specs = bench.default_problem_specs(topo, branch_length)
        threads = args.threads or [os.cpu_count() or 1]
    return bench.BenchConfig(
        args.study, specs, list(args.strategies), threads, args.reps, args.out
    )


def cmd_bench(args) -> int:
    try:
        cfg = _bench_config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    bench.oversubscription_warning(cfg.threads)
    rows = bench.run(cfg)
    try:
        with open(cfg.out, "w", newline="") as fh:
            bench.write_csv(rows, fh)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    print(f"wrote {len(rows)} rows to {cfg.out}")
    print("median seconds per cell:")
    for (topo, params, strategy, threads), sec in bench.medians(rows).items():
        print(f"  {topo:9s} {params:14s} {strategy:12s} T={threads:<3d} {sec:.6f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"verify": cmd_verify, "gen": cmd_gen, "bench": cmd_bench}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
