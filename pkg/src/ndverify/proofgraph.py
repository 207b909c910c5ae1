"""Proof graphs: directed acyclic hypergraphs of natural-deduction steps.

Each node bundles its single incoming hyperedge, i.e. the rule that
justifies it and the (unordered) set of premise node ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .formula import Formula, FormulaSyntaxError, parse, to_text

__all__ = [
    "Rule",
    "ARITY",
    "ProofNode",
    "ProofGraph",
    "ProofGraphError",
    "CycleError",
    "load",
    "save",
]


class Rule(Enum):
    ASSUME = "assume"
    AND_INTRO = "andI"
    AND_ELIM_LEFT = "andEl"
    AND_ELIM_RIGHT = "andEr"
    OR_INTRO_LEFT = "orIl"
    OR_INTRO_RIGHT = "orIr"
    OR_ELIM = "orE"
    IMP_INTRO = "impI"
    IMP_ELIM = "impE"
    NOT_INTRO = "notI"
    NOT_ELIM = "notE"
    IFF_INTRO = "iffI"
    IFF_ELIM_LEFT = "iffEl"
    IFF_ELIM_RIGHT = "iffEr"


ARITY: dict[Rule, int] = {
    Rule.ASSUME: 0,
    Rule.AND_INTRO: 2,
    Rule.AND_ELIM_LEFT: 1,
    Rule.AND_ELIM_RIGHT: 1,
    Rule.OR_INTRO_LEFT: 1,
    Rule.OR_INTRO_RIGHT: 1,
    Rule.OR_ELIM: 3,
    Rule.IMP_INTRO: 1,
    Rule.IMP_ELIM: 2,
    Rule.NOT_INTRO: 2,
    Rule.NOT_ELIM: 2,
    Rule.IFF_INTRO: 2,
    Rule.IFF_ELIM_LEFT: 2,
    Rule.IFF_ELIM_RIGHT: 2,
}


class ProofGraphError(ValueError):
    """Malformed proof graph input."""


class CycleError(ProofGraphError):
    def __init__(self, node_id: int):
        self.node_id = node_id
        super().__init__(f"cycle detected through node {node_id}")


@dataclass(frozen=True)
class ProofNode:
    id: int
    formula: Formula
    rule: Rule
    premises: frozenset[int]

    @property
    def arity_ok(self) -> bool:
        return len(self.premises) == ARITY[self.rule]


class ProofGraph:
    """Immutable, structurally validated proof graph.

    Construction checks id uniqueness, that premises refer to existing
    nodes and acyclicity. Rule arity is deliberately *not* a structural
    error here: a node citing the wrong number of premises is an invalid
    proof step and is reported by the verifier as a syntax failure. Pass
    ``strict=True`` to reject such nodes up front instead.
    """

    def __init__(self, nodes: Iterable[ProofNode] = (), *, strict: bool = False):
        table: dict[int, ProofNode] = {}
        for node in nodes:
            if not isinstance(node.id, int) or isinstance(node.id, bool) or node.id < 0:
                raise ProofGraphError(f"node id must be a non-negative integer, got {node.id!r}")
            if node.id in table:
                raise ProofGraphError(f"duplicate node id {node.id}")
            table[node.id] = node
        for node in table.values():
            for p in node.premises:
                if p not in table:
                    raise ProofGraphError(
                        f"node {node.id} cites unknown premise {p}"
                    )
            if strict and not node.arity_ok:
                raise ProofGraphError(
                    f"node {node.id}: rule {node.rule.value} takes "
                    f"{ARITY[node.rule]} premises, got {len(node.premises)}"
                )
        self._nodes = table
        self._ids = tuple(sorted(table))
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        # Kahn's algorithm over premise -> conclusion edges.
        indegree = {i: len(n.premises) for i, n in self._nodes.items()}
        children: dict[int, list[int]] = {i: [] for i in self._nodes}
        for n in self._nodes.values():
            for p in n.premises:
                children[p].append(n.id)
        ready = [i for i, d in indegree.items() if d == 0]
        seen = 0
        while ready:
            i = ready.pop()
            seen += 1
            for c in children[i]:
                indegree[c] -= 1
                if indegree[c] == 0:
                    ready.append(c)
        if seen == len(self._nodes):
            return
        # Walk premise links among the leftovers until a node repeats; that
        # node lies on a cycle.
        stuck = {i for i, d in indegree.items() if d > 0}
        cur = min(stuck)
        visited: set[int] = set()
        while cur not in visited:
            visited.add(cur)
            cur = min(p for p in self._nodes[cur].premises if p in stuck)
        raise CycleError(cur)

    # -- read-only accessors -------------------------------------------------

    @property
    def ids(self) -> tuple[int, ...]:
        """Node ids in ascending order."""
        return self._ids

    @property
    def nodes(self) -> Mapping[int, ProofNode]:
        return self._nodes

    def node(self, node_id: int) -> ProofNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise KeyError(f"unknown node id {node_id}") from None

    def formula(self, node_id: int) -> Formula:
        return self.node(node_id).formula

    def parents(self, node_id: int) -> set[ProofNode]:
        return {self._nodes[p] for p in self.node(node_id).premises}

    def __len__(self) -> int:
        return len(self._nodes)

    def __iter__(self) -> Iterator[ProofNode]:
        return (self._nodes[i] for i in self._ids)

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._nodes

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProofGraph):
            return NotImplemented
        return self._nodes == other._nodes

    def __repr__(self) -> str:
        return f"ProofGraph({len(self)} nodes)"

    def replace(self, node: ProofNode) -> "ProofGraph":
        """New graph with ``node`` substituted for the node sharing its id."""
        nodes = dict(self._nodes)
        nodes[node.id] = node
        return ProofGraph(nodes.values())


def _node_from_json(obj: object) -> ProofNode:
    if not isinstance(obj, dict):
        raise ProofGraphError(f"node entry must be an object, got {obj!r}")
    missing = {"id", "formula", "rule", "premises"} - obj.keys()
    if missing:
        raise ProofGraphError(f"node entry missing fields: {sorted(missing)}")
    node_id = obj["id"]
    if not isinstance(node_id, int) or isinstance(node_id, bool):
        raise ProofGraphError(f"node id must be an integer, got {node_id!r}")
    if not isinstance(obj["formula"], str):
        raise ProofGraphError(f"node {node_id}: formula must be a string")
    try:
        formula = parse(obj["formula"])
    except FormulaSyntaxError as exc:
        raise ProofGraphError(f"node {node_id}: {exc}") from exc
    try:
        rule = Rule(obj["rule"])
    except ValueError:
        raise ProofGraphError(f"node {node_id}: unknown rule {obj['rule']!r}") from None
    premises = obj["premises"]
    if not isinstance(premises, list) or not all(
        isinstance(p, int) and not isinstance(p, bool) for p in premises
    ):
        raise ProofGraphError(f"node {node_id}: premises must be a list of integers")
    return ProofNode(node_id, formula, rule, frozenset(premises))


def load(data: bytes | str, *, strict: bool = False) -> ProofGraph:
    """Parse and validate the JSON interchange format."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ProofGraphError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise ProofGraphError('expected an object with a "nodes" list')
    return ProofGraph((_node_from_json(o) for o in doc["nodes"]), strict=strict)


def save(graph: ProofGraph) -> bytes:
    nodes = [
        {
            "id": n.id,
            "formula": to_text(n.formula),
            "rule": n.rule.value,
            "premises": sorted(n.premises),
        }
        for n in graph
    ]
    return json.dumps({"nodes": nodes}, separators=(",", ":")).encode("utf-8")
