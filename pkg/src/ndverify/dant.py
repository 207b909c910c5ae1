"""Generators for the three directed acyclic network topologies (DANTs).

All generators are deterministic: atom names and node ids depend only on
the parameters, so saved files are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import And, Atom, Or
from .proofgraph import ProofGraph, ProofNode, Rule

__all__ = [
    "DantSpec",
    "gen_straight",
    "gen_branches",
    "gen_tree",
    "generate",
    "straight_size",
    "branches_size",
    "tree_size",
]


def straight_size(n: int) -> int:
    return n


def branches_size(b: int, n: int) -> int:
    return b * (n + 1) + (b - 1)


def tree_size(h: int) -> int:
    return 2 ** (h + 1) - 1


def gen_straight(n: int) -> ProofGraph:
    """One assumption ``a0`` followed by ``n - 1`` right disjunction intros."""
    if n < 1:
        raise ValueError("straight DANT needs n >= 1")
    f = Atom("a0")
    nodes = [ProofNode(0, f, Rule.ASSUME, frozenset())]
    for i in range(1, n):
        f = Or(f, Atom(f"a{i}"))
        nodes.append(ProofNode(i, f, Rule.OR_INTRO_RIGHT, frozenset((i - 1,))))
    return ProofGraph(nodes)


def gen_branches(b: int, n: int) -> ProofGraph:
    """``b`` chains of ``n`` disjunction intros, folded together by ``andI``.

    Branch ``j`` occupies ids ``j*(n+1) .. j*(n+1)+n``; the ``b - 1``
    combining nodes follow.
    """
    if b < 1 or n < 0:
        raise ValueError("branches DANT needs b >= 1 and n >= 0")
    nodes = []
    tips = []
    for j in range(b):
        base = j * (n + 1)
        f = Atom(f"c{j}_0")
        nodes.append(ProofNode(base, f, Rule.ASSUME, frozenset()))
        for i in range(1, n + 1):
            f = Or(f, Atom(f"c{j}_{i}"))
            nodes.append(ProofNode(base + i, f, Rule.OR_INTRO_RIGHT, frozenset((base + i - 1,))))
        tips.append((base + n, f))

    next_id = b * (n + 1)
    acc_id, acc = tips[0]
    for tip_id, tip in tips[1:]:
        acc = And(acc, tip)
        nodes.append(ProofNode(next_id, acc, Rule.AND_INTRO, frozenset((acc_id, tip_id))))
        acc_id = next_id
        next_id += 1
    return ProofGraph(nodes)


def gen_tree(h: int) -> ProofGraph:
    """Balanced binary tree: ``2**h`` assumptions joined pairwise ``h`` times."""
    if h < 0:
        raise ValueError("tree DANT needs h >= 0")
    level = [(i, Atom(f"t{i}")) for i in range(2**h)]
    nodes = [ProofNode(i, f, Rule.ASSUME, frozenset()) for i, f in level]
    next_id = len(level)
    while len(level) > 1:
        paired = []
        for (li, lf), (ri, rf) in zip(level[0::2], level[1::2]):
            f = And(lf, rf)
            nodes.append(ProofNode(next_id, f, Rule.AND_INTRO, frozenset((li, ri))))
            paired.append((next_id, f))
            next_id += 1
        level = paired
    return ProofGraph(nodes)


@dataclass(frozen=True)
class DantSpec:
    topology: str  # "straight" | "branches" | "tree"
    n: int | None = None
    b: int | None = None
    h: int | None = None

    def __post_init__(self):
        need = {"straight": ("n",), "branches": ("b", "n"), "tree": ("h",)}
        if self.topology not in need:
            raise ValueError(f"unknown topology {self.topology!r}")
        for name in need[self.topology]:
            if getattr(self, name) is None:
                raise ValueError(f"{self.topology} DANT requires --{name}")

    @property
    def params(self) -> str:
        if self.topology == "straight":
            return f"n={self.n}"
        if self.topology == "branches":
            return f"b={self.b};n={self.n}"
        return f"h={self.h}"

    @property
    def size(self) -> int:
        if self.topology == "straight":
            return straight_size(self.n)
        if self.topology == "branches":
            return branches_size(self.b, self.n)
        return tree_size(self.h)


def generate(spec: DantSpec) -> ProofGraph:
    if spec.topology == "straight":
        return gen_straight(spec.n)
    if spec.topology == "branches":
        return gen_branches(spec.b, spec.n)
    return gen_tree(spec.h)
