"""Topological generations of a proof graph.

A premise-free node (an assumption) sits on layer 0; every other node sits
one layer above its deepest parent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .proofgraph import CycleError, ProofGraph

__all__ = ["LayerMap", "compute_layers"]


@dataclass(frozen=True)
class LayerMap:
    layers: tuple[tuple[int, ...], ...]
    index: dict[int, int]

    def __len__(self) -> int:
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)

    def __getitem__(self, k: int) -> tuple[int, ...]:
        return self.layers[k]

    def layer_of(self, node_id: int) -> int:
        return self.index[node_id]

    def flatten(self) -> list[int]:
        return [n for layer in self.layers for n in layer]

    def widths(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def trace_lines(self) -> list[str]:
        return [
            f"layer {k}: {' '.join(map(str, layer))}"
            for k, layer in enumerate(self.layers)
        ]


def compute_layers(graph: ProofGraph) -> LayerMap:
    """Indegree-countdown sweep, linear in nodes plus premise references."""
    pending = {}
    children: dict[int, list[int]] = {i: [] for i in graph.ids}
    level: dict[int, int] = {}
    frontier = []
    for node in graph:
        pending[node.id] = len(node.premises)
        for p in node.premises:
            children[p].append(node.id)
        if not node.premises:
            level[node.id] = 0
            frontier.append(node.id)

    while frontier:
        nxt = []
        for i in frontier:
            for c in children[i]:
                pending[c] -= 1
                if pending[c] == 0:
                    level[c] = 1 + max(level[p] for p in graph.nodes[c].premises)
                    nxt.append(c)
        frontier = nxt

    if len(level) != len(graph):
        raise CycleError(min(i for i in graph.ids if i not in level))

    depth = max(level.values(), default=-1) + 1
    buckets: list[list[int]] = [[] for _ in range(depth)]
    for i in graph.ids:  # ascending, so each bucket comes out sorted
        buckets[level[i]].append(i)
    return LayerMap(tuple(tuple(b) for b in buckets), level)
