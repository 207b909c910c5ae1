import csv
import json

import pytest

from ndverify import bench
from ndverify.bench import BenchConfig, CSV_HEADER, run_problem_scaling, run_strong_scaling
from ndverify.cli import main
from ndverify.dant import DantSpec
from ndverify.proofgraph import load
from ndverify.verifier import StrategyKind

from conftest import FIXTURES


class TestVerifyCommand:
    def test_not_intro_serial(self, capsys):
        assert main(["verify", str(FIXTURES / "not_intro.json"), "--strategy", "serial"]) == 0
        assert capsys.readouterr().out.startswith("valid")

    @pytest.mark.parametrize("strategy", ["parallel", "loadbalance", "syntaxfirst"])
    def test_parallel_strategies(self, strategy):
        assert main(["verify", str(FIXTURES / "by_cases.json"), "--strategy", strategy, "--threads", "2"]) == 0

    def test_dangling_premise(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text('{"nodes":[{"id":0,"formula":"p","rule":"orIr","premises":[3]}]}')
        assert main(["verify", str(f)]) == 2
        assert "unknown premise" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["verify", str(tmp_path / "nope.json")]) == 2

    def test_mutated_by_cases(self, tmp_path, capsys):
        doc = json.loads((FIXTURES / "by_cases.json").read_text())
        for node in doc["nodes"]:
            if node["id"] == 9:
                node["rule"] = "andI"
        f = tmp_path / "mutated.json"
        f.write_text(json.dumps(doc))
        assert main(["verify", str(f)]) == 1
        out = capsys.readouterr().out
        assert out.startswith("invalid") and "node 9: syntax" in out

    def test_trace(self, capsys):
        main(["verify", str(FIXTURES / "distrib.json"), "--trace"])
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "layer 0: 2 4 7 16 18 20 23 24"
        assert out[5] == "layer 5: 0"


class TestGenCommand:
    @pytest.mark.parametrize(
        "args, count",
        [(["tree", "--h", "2"], 7), (["straight", "--n", "1"], 1), (["branches", "--b", "150", "--n", "100"], 15299)],
    )
    def test_node_counts(self, tmp_path, args, count):
        out = tmp_path / "g.json"
        assert main(["gen", *args, "--out", str(out)]) == 0
        assert len(load(out.read_bytes())) == count

    def test_missing_parameter(self, tmp_path):
        assert main(["gen", "tree", "--out", str(tmp_path / "x.json")]) == 2

    def test_unwritable(self, tmp_path):
        assert main(["gen", "tree", "--h", "1", "--out", str(tmp_path / "no" / "x.json")]) == 2


class TestBench:
    def test_strong_row_count(self):
        cfg = BenchConfig("strong", [DantSpec("tree", h=10)],
                          [StrategyKind.SERIAL, StrategyKind.PARALLEL], [1, 2, 4], reps=3)
        rows = run_strong_scaling(cfg)
        # 2 strategies x 3 thread counts x 3 reps
        assert len(rows) == 2 * 3 * 3
        assert all(r.valid and r.seconds > 0 and r.nodes == 2047 for r in rows)
        assert {r.threads for r in rows if r.strategy == "serial"} == {1, 2, 4}

    def test_single_cell(self):
        cfg = BenchConfig("strong", [DantSpec("straight", n=5)], [StrategyKind.PARALLEL], [2], reps=1)
        assert len(run_strong_scaling(cfg)) == 1

    def test_problem_rows(self):
        specs = [DantSpec("tree", h=h) for h in (8, 10, 12)]
        cfg = BenchConfig("problem", specs, [StrategyKind.SERIAL, StrategyKind.SYNTAX_FIRST], [2], reps=1)
        rows = run_problem_scaling(cfg)
        assert len(rows) == 6
        assert [r.nodes for r in rows] == [2 ** (h + 1) - 1 for h in (8, 8, 10, 10, 12, 12)]

    def test_row_order_deterministic(self):
        cfg = BenchConfig("strong", [DantSpec("tree", h=3)], list(StrategyKind), [1, 2], reps=2)
        key = lambda rows: [(r.strategy, r.threads, r.rep) for r in rows]
        assert key(run_strong_scaling(cfg)) == key(run_strong_scaling(cfg))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            BenchConfig("strong", [DantSpec("tree", h=3)], reps=0)
        with pytest.raises(ValueError):
            BenchConfig("strong", [DantSpec("tree", h=3)], threads=[0])
        with pytest.raises(ValueError):
            BenchConfig("problem", [DantSpec("tree", h=3)], threads=[1, 2])

    def test_default_grids(self):
        assert [s.n for s in bench.default_problem_specs("straight")] == [100, 150, 200, 250, 300, 350, 400]
        assert [s.b for s in bench.default_problem_specs("branches")] == [30, 50, 70, 90, 110, 130, 150]
        assert [s.h for s in bench.default_problem_specs("tree")] == [8, 10, 12, 14, 16, 18, 20]
        assert bench.default_strong_spec("tree").h == 16

    def test_cli_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "strong.csv"
        rc = main(["bench", "strong", "--topology", "tree", "--h", "4",
                   "--strategies", "serial,parallel", "--threads", "1,2", "--reps", "2", "--out", str(out)])
        assert rc == 0
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == CSV_HEADER
        assert rows[0] == "topology,params,strategy,threads,nodes,rep,seconds,valid".split(",")
        assert len(rows) == 1 + 2 * 2 * 2
        assert rows[1][:6] == ["tree", "h=4", "serial", "1", "31", "0"]
        assert "median seconds" in capsys.readouterr().out

    def test_cli_problem_sizes(self, tmp_path):
        out = tmp_path / "problem.csv"
        rc = main(["bench", "problem", "--topology", "branches", "--n", "3", "--sizes", "2,4",
                   "--strategies", "loadbalance", "--threads", "2", "--reps", "1", "--out", str(out)])
        assert rc == 0
        rows = list(csv.DictReader(open(out)))
        assert [r["params"] for r in rows] == ["b=2;n=3", "b=4;n=3"]
        assert [int(r["nodes"]) for r in rows] == [9, 19]

    def test_cli_bad_output(self, tmp_path):
        rc = main(["bench", "strong", "--topology", "straight", "--n", "3", "--strategies", "serial",
                   "--threads", "1", "--reps", "1", "--out", str(tmp_path / "no" / "x.csv")])
        assert rc == 2

    def test_oversubscription_warning(self, capsys, monkeypatch):
        monkeypatch.setattr(bench.os, "cpu_count", lambda: 2)
        bench.oversubscription_warning([1, 4])
        assert "oversubscribed" in capsys.readouterr().err
