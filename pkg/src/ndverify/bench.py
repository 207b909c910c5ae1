"""Strong-scaling and problem-scaling studies over DANT instances."""

from __future__ import annotations

import csv
import io
import os
import statistics
import sys
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .dant import DantSpec, generate
from .verifier import Strategy, StrategyKind, verify

__all__ = [
    "CSV_HEADER",
    "BenchConfig",
    "BenchRow",
    "run_strong_scaling",
    "run_problem_scaling",
    "run",
    "write_csv",
    "medians",
    "default_strong_spec",
    "default_problem_specs",
]

CSV_HEADER = ["topology", "params", "strategy", "threads", "nodes", "rep", "seconds", "valid"]

ALL_STRATEGIES = tuple(StrategyKind)


def default_strong_spec(topology: str) -> DantSpec:
    return {
        "straight": DantSpec("straight", n=150),
        "branches": DantSpec("branches", b=150, n=100),
        "tree": DantSpec("tree", h=16),
    }[topology]


def default_problem_specs(topology: str, branch_length: int = 100) -> list[DantSpec]:
    if topology == "straight":
        return [DantSpec("straight", n=n) for n in range(100, 401, 50)]
    if topology == "branches":
        return [DantSpec("branches", b=b, n=branch_length) for b in range(30, 151, 20)]
    if topology == "tree":
        return [DantSpec("tree", h=h) for h in range(8, 21, 2)]
    raise ValueError(f"unknown topology {topology!r}")


@dataclass
class BenchConfig:
    study: str  # "strong" | "problem"
    specs: list[DantSpec]
    strategies: list[StrategyKind] = field(default_factory=lambda: list(ALL_STRATEGIES))
    threads: list[int] = field(default_factory=lambda: [1, 2, 4, 8])
    reps: int = 3
    out: str | None = None

    def __post_init__(self):
        if self.study not in ("strong", "problem"):
            raise ValueError(f"unknown study {self.study!r}")
        if self.reps < 1:
            raise ValueError("repetitions must be >= 1")
        if not self.threads or any(t < 1 for t in self.threads):
            raise ValueError("thread counts must be >= 1")
        if self.study == "strong" and len(self.specs) != 1:
            raise ValueError("a strong-scaling study holds one DANT instance fixed")
        if self.study == "problem" and len(self.threads) != 1:
            raise ValueError("a problem-scaling study uses a single thread count")
        self.strategies = [StrategyKind(s) for s in self.strategies]


@dataclass(frozen=True)
class BenchRow:
    topology: str
    params: str
    strategy: str
    threads: int
    nodes: int
    rep: int
    seconds: float
    valid: bool

    def as_list(self) -> list:
        return [
            self.topology, self.params, self.strategy, self.threads,
            self.nodes, self.rep, f"{self.seconds:.9f}", str(self.valid).lower(),
        ]


def _timed_rows(spec: DantSpec, graph, strategy: StrategyKind, threads: int, reps: int):
    for rep in range(reps):
        verdict = verify(graph, Strategy(strategy, threads))
        if not verdict.valid:
            raise RuntimeError(
                f"{spec.topology} {spec.params} rejected by {strategy.value}: {verdict.failures[:3]}"
            )
        # elapsed covers layering + verification only
        yield BenchRow(
            spec.topology, spec.params, strategy.value, threads,
            len(graph), rep, verdict.stats.elapsed, verdict.valid,
        )


def oversubscription_warning(threads: Iterable[int], stream: TextIO | None = None) -> None:
    hw = os.cpu_count() or 1
    worst = max(threads)
    if worst > hw:
        print(
            f"warning: {worst} threads requested but only {hw} hardware threads "
            "detected; timings will be oversubscribed",
            file=stream or sys.stderr,
        )


def run_strong_scaling(cfg: BenchConfig) -> list[BenchRow]:
    """Fixed instance, every (strategy, thread count, repetition) cell.

    Serial ignores the thread count but is rerun per listed count so the
    table stays rectangular.
    """
    (spec,) = cfg.specs
    graph = generate(spec)
    rows: list[BenchRow] = []
    for strategy in cfg.strategies:
        for threads in cfg.threads:
            rows.extend(_timed_rows(spec, graph, strategy, threads, cfg.reps))
    return rows


def run_problem_scaling(cfg: BenchConfig) -> list[BenchRow]:
    """Fixed thread count, every (size, strategy, repetition) cell."""
    (threads,) = cfg.threads
    rows: list[BenchRow] = []
    for spec in cfg.specs:
        graph = generate(spec)
        for strategy in cfg.strategies:
            rows.extend(_timed_rows(spec, graph, strategy, threads, cfg.reps))
    return rows


def run(cfg: BenchConfig) -> list[BenchRow]:
    if cfg.study == "strong":
        return run_strong_scaling(cfg)
    return run_problem_scaling(cfg)


def write_csv(rows: Iterable[BenchRow], stream: TextIO) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.as_list())


def to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def medians(rows: Iterable[BenchRow]) -> dict[tuple[str, str, str, int], float]:
    """Median seconds per (topology, params, strategy, threads) cell."""
    cells: dict[tuple[str, str, str, int], list[float]] = {}
    for r in rows:
        cells.setdefault((r.topology, r.params, r.strategy, r.threads), []).append(r.seconds)
    return {k: statistics.median(v) for k, v in cells.items()}
