import json
import random

import pytest

from ndverify.dant import gen_branches, gen_straight, gen_tree
from ndverify.formula import Atom, Or
from ndverify.proofgraph import CycleError, ProofGraph, ProofGraphError, ProofNode, Rule, load, save

from conftest import FIXTURES


def doc(*nodes):
    return json.dumps({"nodes": [
        {"id": i, "formula": f, "rule": r, "premises": list(ps)} for i, f, r, ps in nodes
    ]})


class TestLoad:
    def test_not_intro(self, not_intro):
        assert len(not_intro) == 4
        assert not_intro.node(3).rule is Rule.NOT_INTRO
        assert not_intro.node(3).premises == {1, 2}

    def test_empty(self):
        assert len(load('{"nodes":[]}')) == 0

    def test_self_loop(self):
        with pytest.raises(CycleError) as exc:
            load(doc((0, "p | q", "orIr", [0])))
        assert exc.value.node_id == 0

    def test_longer_cycle_reports_member(self):
        with pytest.raises(CycleError) as exc:
            load(doc((0, "p", "assume", []), (1, "p", "andEl", [3]),
                     (2, "p", "andEl", [1]), (3, "p", "andEl", [2]), (4, "p", "andEl", [3])))
        assert exc.value.node_id in {1, 2, 3}

    def test_dangling_premise(self):
        with pytest.raises(ProofGraphError, match="unknown premise 7"):
            load(doc((0, "p", "orIr", [7])))

    def test_duplicate_id(self):
        with pytest.raises(ProofGraphError, match="duplicate"):
            load(doc((0, "p", "assume", []), (0, "q", "assume", [])))

    def test_unknown_rule(self):
        with pytest.raises(ProofGraphError, match="unknown rule"):
            load(doc((0, "p", "modusPonens", [])))

    def test_formula_parse_error(self):
        with pytest.raises(ProofGraphError, match="byte"):
            load(doc((0, "p &", "assume", [])))

    @pytest.mark.parametrize("bad", ["", "[]", '{"nodes": 3}', '{"nodes":[{"id":0}]}',
                                     '{"nodes":[{"id":-1,"formula":"p","rule":"assume","premises":[]}]}',
                                     '{"nodes":[{"id":"0","formula":"p","rule":"assume","premises":[]}]}'])
    def test_malformed_documents(self, bad):
        with pytest.raises(ProofGraphError):
            load(bad)

    def test_arity_is_deferred_unless_strict(self):
        text = doc((0, "p", "assume", []), (1, "q", "assume", []), (2, "p", "andEl", [0, 1]))
        assert len(load(text)) == 3
        with pytest.raises(ProofGraphError, match="takes 1 premises"):
            load(text, strict=True)

    def test_premise_order_irrelevant(self):
        a = load(doc((0, "p", "assume", []), (1, "q", "assume", []), (2, "p & q", "andI", [0, 1])))
        b = load(doc((0, "p", "assume", []), (1, "q", "assume", []), (2, "p & q", "andI", [1, 0])))
        assert a == b


class TestSave:
    def test_empty(self):
        assert save(ProofGraph()) == b'{"nodes":[]}'

    def test_by_cases_roundtrip(self, by_cases):
        again = load(save(by_cases))
        assert again == by_cases
        assert len(again) == 9

    @pytest.mark.parametrize("graph", [gen_straight(12), gen_branches(4, 3), gen_tree(4)])
    def test_dant_roundtrip(self, graph):
        assert load(save(graph)) == graph

    def test_random_dants_roundtrip(self):
        from proofgen import random_dant, random_proof

        rng = random.Random(7)
        for _ in range(40):
            g = random_dant(rng) if rng.random() < 0.5 else random_proof(rng)
            assert load(save(g)) == g

    def test_byte_stable(self):
        assert save(gen_tree(3)) == save(gen_tree(3))


class TestParents:
    def test_assumption_has_none(self, distrib):
        assert distrib.parents(2) == set()

    def test_distrib_node3(self, distrib):
        assert {n.id for n in distrib.parents(3)} == {5, 6}

    def test_distrib_node11(self, distrib):
        assert {n.id for n in distrib.parents(11)} == {8}

    def test_unknown_id(self, distrib):
        with pytest.raises(KeyError):
            distrib.parents(99)


def dfs_has_cycle(edges: dict[int, set[int]]) -> bool:
    """Independent three-colour DFS cycle detector."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in edges}

    def visit(v):
        colour[v] = GREY
        for w in edges[v]:
            if colour[w] == GREY or (colour[w] == WHITE and visit(w)):
                return True
        colour[v] = BLACK
        return False

    return any(colour[v] == WHITE and visit(v) for v in edges)


def test_acyclicity_agrees_with_dfs():
    rng = random.Random(2024)
    cyclic_seen = 0
    for trial in range(300):
        n = rng.randint(1, 12)
        edges = {v: set() for v in range(n)}
        for v in range(n):
            for _ in range(rng.randint(0, 2)):
                u = rng.randrange(n)
                # mostly forward edges; occasionally inject a back edge
                if u < v or rng.random() < 0.15:
                    edges[v].add(u)
        nodes = [
            ProofNode(v, Or(Atom("p"), Atom("q")), Rule.OR_INTRO_RIGHT if edges[v] else Rule.ASSUME,
                      frozenset(edges[v]))
            for v in range(n)
        ]
        expected = dfs_has_cycle(edges)
        cyclic_seen += expected
        try:
            ProofGraph(nodes)
            got = False
        except CycleError:
            got = True
        assert got == expected, (trial, edges)
    assert cyclic_seen > 20
