"""Layer-wise proof verification: one serial and three fork-join strategies.

All strategies share the same per-node work (a syntax phase followed by an
assumption phase) and differ only in how that work is scheduled:

``serial``
    Layers in order, nodes in ascending id, stop at the first failure.
``parallel``
    Each layer is cut into contiguous blocks, one per worker. Workers write
    assumption sets only into their own slots of a per-layer vector; the
    per-node results are AND-reduced at the layer barrier.
``loadbalance``
    As ``parallel``, but workers with a short block also syntax-check one
    node from further ahead in the flattened layer order. Those nodes skip
    the syntax phase when their own layer comes round.
``syntaxfirst``
    Syntax-check every node up front, then run the ``parallel`` layer loop
    with the assumption phase only.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .layering import LayerMap, compute_layers
from .proofgraph import ProofGraph
from .rules import RoleAssignment, assumption_check, compute_assumptions, syntax_candidates

__all__ = [
    "StrategyKind",
    "Strategy",
    "Reason",
    "Failure",
    "VerifyStats",
    "Verdict",
    "verify",
    "partition",
]


class StrategyKind(Enum):
    SERIAL = "serial"
    PARALLEL = "parallel"
    LOAD_BALANCE = "loadbalance"
    SYNTAX_FIRST = "syntaxfirst"


@dataclass(frozen=True)
class Strategy:
    kind: StrategyKind
    threads: int = 1

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", StrategyKind(self.kind))
        if not isinstance(self.threads, int) or self.threads < 1:
            raise ValueError(f"thread count must be a positive integer, got {self.threads!r}")

    @classmethod
    def serial(cls) -> "Strategy":
        return cls(StrategyKind.SERIAL)

    @classmethod
    def parallel(cls, threads: int) -> "Strategy":
        return cls(StrategyKind.PARALLEL, threads)

    @classmethod
    def load_balance(cls, threads: int) -> "Strategy":
        return cls(StrategyKind.LOAD_BALANCE, threads)

    @classmethod
    def syntax_first(cls, threads: int) -> "Strategy":
        return cls(StrategyKind.SYNTAX_FIRST, threads)


class Reason(Enum):
    SYNTAX = "syntax"
    ASSUMPTION = "assumption-constraint"


@dataclass(frozen=True, order=True)
class Failure:
    node: int
    reason: Reason = field(compare=False)


@dataclass
class VerifyStats:
    layers_processed: int = 0
    nodes_verified: int = 0
    syntax_checks: int = 0
    elapsed: float = 0.0


@dataclass
class Verdict:
    valid: bool
    failures: list[Failure]
    assumptions: dict[int, frozenset[int]]
    stats: VerifyStats
    # populated only by verify(..., debug=True): ("syntax" | "assume", node id)
    events: list[tuple[str, int]] | None = None

    def __post_init__(self):
        self.failures.sort()
        assert self.valid == (not self.failures)


def partition(n: int, parts: int) -> list[tuple[int, int]]:
    """Contiguous [start, stop) blocks whose sizes differ by at most one."""
    q, r = divmod(n, parts)
    blocks = []
    start = 0
    for k in range(parts):
        stop = start + q + (1 if k < r else 0)
        blocks.append((start, stop))
        start = stop
    return blocks


# ---------------------------------------------------------------------------
# per-node work
# ---------------------------------------------------------------------------


def _syntax(graph: ProofGraph, nid: int) -> list[RoleAssignment]:
    node = graph.nodes[nid]
    nodes = graph.nodes
    return syntax_candidates(
        node.rule, node.formula, {p: nodes[p].formula for p in node.premises}
    )


def _assumptions(
    graph: ProofGraph,
    nid: int,
    candidates: Sequence[RoleAssignment],
    amap: dict[int, frozenset[int]],
) -> frozenset[int] | None:
    """Assumption set under the first candidate meeting its constraints."""
    node = graph.nodes[nid]
    parent_sets = {p: amap[p] for p in node.premises}
    formula_of = graph.formula
    for roles in candidates:
        if assumption_check(node.rule, roles, node.formula, parent_sets, formula_of):
            return compute_assumptions(
                node.rule, roles, nid, node.formula, parent_sets, formula_of
            )
    return None


class _Ownership:
    """Debug-mode guard: every slot in a vector may be written once."""

    def __init__(self, size: int):
        self.owner: list[int | None] = [None] * size

    def claim(self, slot: int, rank: int) -> None:
        prev = self.owner[slot]
        if prev is not None:
            raise AssertionError(f"slot {slot} written by workers {prev} and {rank}")
        self.owner[slot] = rank


class _Team:
    """Fixed pool of workers run fork-join style: ``run`` is a full barrier."""

    def __init__(self, threads: int):
        self.threads = threads
        self._pool = ThreadPoolExecutor(max_workers=threads, thread_name_prefix="ndverify")

    def run(self, work: Callable[[int], object], ranks: Sequence[int]) -> list:
        futures = [self._pool.submit(work, r) for r in ranks]
        return [f.result() for f in futures]

    def close(self) -> None:
        self._pool.shutdown(wait=True)


# ---------------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------------


def _verify_serial(graph, layers: LayerMap, stats: VerifyStats, events):
    amap: dict[int, frozenset[int]] = {}
    for layer in layers:
        for nid in layer:
            stats.syntax_checks += 1
            if events is not None:
                events.append(("syntax", nid))
            candidates = _syntax(graph, nid)
            if not candidates:
                return [Failure(nid, Reason.SYNTAX)], amap
            if events is not None:
                events.append(("assume", nid))
            aset = _assumptions(graph, nid, candidates, amap)
            if aset is None:
                return [Failure(nid, Reason.ASSUMPTION)], amap
            amap[nid] = aset
            stats.nodes_verified += 1
        stats.layers_processed += 1
    return [], amap


def _layer_loop(graph, layers, team, stats, events, debug, pre=None, lookahead=None):
    """Shared body of the three parallel strategies.

    ``pre`` maps node id to already computed syntax candidates. When
    ``lookahead`` is given (load balancing), it is the
    flattened node order used to schedule extra syntax checks.
    """
    T = team.threads
    amap: dict[int, frozenset[int]] = {}
    if pre is None:
        pre = {}
    flat = pos_of = pre_slots = None
    if lookahead is not None:
        flat = lookahead
        pos_of = {nid: k for k, nid in enumerate(flat)}
        # write-disjoint: each look-ahead position is handed to one worker
        pre_slots = [None] * len(flat)
    pre_owner = _Ownership(len(flat)) if (debug and flat is not None) else None
    layer_end = 0
    num_syntax_verified = 0

    for layer in layers:
        nl = len(layer)
        layer_end += nl
        aids: list[frozenset[int] | None] = [None] * nl
        owner = _Ownership(nl) if debug else None
        blocks = partition(nl, T)

        extra_of: dict[int, int] = {}
        if flat is not None:
            widest = blocks[0][1] - blocks[0][0]
            spare = [r for r, (a, b) in enumerate(blocks) if b - a < widest]
            base = max(num_syntax_verified, layer_end)
            for j, r in enumerate(spare):
                if base + j < len(flat):
                    extra_of[r] = base + j

        def work(rank: int, layer=layer, aids=aids, owner=owner, blocks=blocks, extra_of=extra_of):
            start, stop = blocks[rank]
            fails: list[Failure] = []
            log: list[tuple[str, int]] = []
            checks = 0
            for slot in range(start, stop):
                nid = layer[slot]
                candidates = pre.get(nid)
                if candidates is None and pre_slots is not None:
                    candidates = pre_slots[pos_of[nid]]
                if candidates is None:
                    checks += 1
                    log.append(("syntax", nid))
                    candidates = _syntax(graph, nid)
                    if not candidates:
                        fails.append(Failure(nid, Reason.SYNTAX))
                        continue
                log.append(("assume", nid))
                aset = _assumptions(graph, nid, candidates, amap)
                if aset is None:
                    fails.append(Failure(nid, Reason.ASSUMPTION))
                    continue
                if owner is not None:
                    owner.claim(slot, rank)
                aids[slot] = aset
            pos = extra_of.get(rank)
            if pos is not None:
                nid = flat[pos]
                checks += 1
                log.append(("syntax", nid))
                candidates = _syntax(graph, nid)
                if pre_owner is not None:
                    pre_owner.claim(pos, rank)
                if candidates:
                    pre_slots[pos] = candidates
                else:
                    fails.append(Failure(nid, Reason.SYNTAX))
            return fails, checks, log

        ranks = [r for r in range(T) if blocks[r][1] > blocks[r][0] or r in extra_of]
        results = team.run(work, ranks)

        # reductions at the barrier
        layer_valid = all(not fails for fails, _, _ in results)
        layer_syntax_verified = sum(checks for _, checks, _ in results)
        stats.syntax_checks += layer_syntax_verified
        if events is not None:
            for _, _, log in results:
                events.extend(log)
        if not layer_valid:
            return [f for fails, _, _ in results for f in fails], amap
        for slot, nid in enumerate(layer):
            amap[nid] = aids[slot]
        stats.nodes_verified += nl
        stats.layers_processed += 1
        if flat is not None:
            # the syntax-checked nodes always form a prefix of ``flat``
            expected = max(num_syntax_verified, layer_end) + len(extra_of)
            num_syntax_verified += layer_syntax_verified
            assert num_syntax_verified == expected
    return [], amap


def _verify_syntax_first(graph, layers, team, stats, events, debug):
    ids = graph.ids
    slots: list[list[RoleAssignment] | None] = [None] * len(ids)
    owner = _Ownership(len(ids)) if debug else None
    blocks = partition(len(ids), team.threads)

    def work(rank: int):
        start, stop = blocks[rank]
        fails = []
        for k in range(start, stop):
            candidates = _syntax(graph, ids[k])
            if owner is not None:
                owner.claim(k, rank)
            slots[k] = candidates
            if not candidates:
                fails.append(Failure(ids[k], Reason.SYNTAX))
        return fails

    ranks = [r for r in range(team.threads) if blocks[r][1] > blocks[r][0]]
    results = team.run(work, ranks)
    stats.syntax_checks += len(ids)
    if events is not None:
        events.extend(("syntax", i) for i in ids)
    failures = [f for fails in results for f in fails]
    if failures:
        return failures, {}
    pre = dict(zip(ids, slots))
    return _layer_loop(graph, layers, team, stats, events, debug, pre=pre)


def verify(graph: ProofGraph, strategy: Strategy, *, debug: bool = False) -> Verdict:
    """Verify ``graph`` under ``strategy``.

    An invalid proof yields a normal :class:`Verdict`; only structural
    problems (already caught when the graph was built) raise. With
    ``debug=True`` slot writes are ownership-checked and the order of
    syntax/assumption phases is recorded in ``Verdict.events``.
    """
    stats = VerifyStats()
    events: list[tuple[str, int]] | None = [] if debug else None
    team = None
    t0 = time.perf_counter()
    try:
        layers = compute_layers(graph)
        kind = strategy.kind
        if kind is StrategyKind.SERIAL:
            failures, amap = _verify_serial(graph, layers, stats, events)
        else:
            team = _Team(strategy.threads)
            if kind is StrategyKind.PARALLEL:
                failures, amap = _layer_loop(graph, layers, team, stats, events, debug)
            elif kind is StrategyKind.LOAD_BALANCE:
                failures, amap = _layer_loop(
                    graph, layers, team, stats, events, debug, lookahead=layers.flatten()
                )
            else:
                failures, amap = _verify_syntax_first(graph, layers, team, stats, events, debug)
    finally:
        if team is not None:
            team.close()
    stats.elapsed = time.perf_counter() - t0
    return Verdict(not failures, failures, amap, stats, events)
