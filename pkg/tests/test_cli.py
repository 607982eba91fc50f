import csv
import hashlib
import json
import math
import os

import numpy as np
import pytest

from gcfit import PdGraph, save_bayesnet, save_pdgraph
from gcfit.cli import format_number, main
from conftest import random_net


@pytest.fixture
def workdir(tmp_path, fig1_pdgraph, fig1_truth):
    net = random_net(fig1_truth, np.random.default_rng(1))
    save_bayesnet(net, tmp_path / "truth.json")
    save_pdgraph(fig1_pdgraph, tmp_path / "gpd.json")
    return tmp_path


def run_synth(workdir, out="data", seed="7", n_obs="20000", n_do="10000"):
    return main(
        [
            "synth",
            "--net", str(workdir / "truth.json"),
            "--n-obs", n_obs,
            "--n-do", n_do,
            "--seed", seed,
            "--out-dir", str(workdir / out),
        ]
    )


def read_scores(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def tree_digest(root):
    h = hashlib.sha256()
    for name in sorted(os.listdir(root)):
        h.update(name.encode())
        with open(os.path.join(root, name), "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


class TestFormatNumber:
    def test_infinities(self):
        assert format_number(math.inf) == "inf"
        assert format_number(-math.inf) == "-inf"

    def test_twelve_significant_digits(self):
        assert format_number(1 / 3) == "0.333333333333"


class TestEnumerate:
    def test_fig1_two_lines(self, workdir, capsys):
        assert main(["enumerate", "--graph", str(workdir / "gpd.json")]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines == [
            "G0\t0\ta->b;a->z;b->z",
            "G1\t1\ta->z;b->a;b->z",
        ]

    def test_fig2_four_lines(self, tmp_path, fig2_pdgraph, capsys):
        save_pdgraph(fig2_pdgraph, tmp_path / "g2.json")
        assert main(["enumerate", "--graph", str(tmp_path / "g2.json")]) == 0
        assert len(capsys.readouterr().out.strip().splitlines()) == 4

    def test_triangle_six_lines(self, tmp_path, capsys):
        from gcfit import VariableSchema

        schema = VariableSchema(("a", "b", "c"), (2, 2, 2))
        save_pdgraph(
            PdGraph(schema, (), (("a", "b"), ("a", "c"), ("b", "c"))),
            tmp_path / "tri.json",
        )
        assert main(["enumerate", "--graph", str(tmp_path / "tri.json")]) == 0
        assert len(capsys.readouterr().out.strip().splitlines()) == 6

    def test_cap_exit_code(self, tmp_path, capsys):
        from gcfit import VariableSchema

        schema = VariableSchema(("a", "b", "c"), (2, 2, 2))
        save_pdgraph(
            PdGraph(schema, (), (("a", "b"), ("a", "c"), ("b", "c"))),
            tmp_path / "tri.json",
        )
        rc = main(
            ["enumerate", "--graph", str(tmp_path / "tri.json"), "--max-undirected", "2"]
        )
        assert rc == 3


class TestSynth:
    def test_writes_all_files(self, workdir):
        assert run_synth(workdir) == 0
        out = workdir / "data"
        names = sorted(os.listdir(out))
        # 3 binary nodes: obs + 6 interventional + manifest
        assert names == [
            "do_a_0.csv", "do_a_1.csv", "do_b_0.csv", "do_b_1.csv",
            "do_z_0.csv", "do_z_1.csv", "manifest.json", "obs.csv",
        ]
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["observational"] == "obs.csv"
        assert len(manifest["interventions"]) == 6

    def test_same_seed_byte_identical(self, workdir):
        assert run_synth(workdir, out="d1") == 0
        assert run_synth(workdir, out="d2") == 0
        assert tree_digest(workdir / "d1") == tree_digest(workdir / "d2")

    def test_missing_net_file(self, workdir):
        rc = main(["synth", "--net", str(workdir / "nope.json"), "--out-dir", str(workdir)])
        assert rc == 1


class TestScore:
    @pytest.fixture
    def scored(self, workdir):
        assert run_synth(workdir) == 0
        rc = main(
            [
                "score",
                "--graph", str(workdir / "gpd.json"),
                "--manifest", str(workdir / "data" / "manifest.json"),
                "--out-dir", str(workdir / "out"),
                "--svg",
            ]
        )
        assert rc == 0
        return workdir / "out"

    def test_fig1_signs(self, scored):
        rows = read_scores(scored / "scores.csv")
        assert [r["graph_id"] for r in rows] == ["G0", "G1"]
        assert float(rows[0]["gcf"]) == 1.0  # truth orientation a->b
        assert float(rows[1]["gcf"]) == -1.0

    def test_do_divergences_csv(self, scored):
        with open(scored / "do_divergences.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert {r["node"] for r in rows} == {"a", "b", "z"}
        for node in ("a", "b", "z"):
            per_value = [r for r in rows if r["node"] == node]
            weights = [float(r["weight"]) for r in per_value]
            assert sum(weights) == pytest.approx(1.0)
            expected = sum(float(r["D_a"]) * w for r, w in zip(per_value, weights))
            assert float(per_value[0]["D_node"]) == pytest.approx(expected, rel=1e-9)

    def test_svg_written(self, scored):
        svg = (scored / "plot.svg").read_text()
        assert svg.startswith("<svg")
        assert "G0" in svg and "G1" in svg

    def test_reruns_byte_identical(self, workdir, scored):
        rc = main(
            [
                "score",
                "--graph", str(workdir / "gpd.json"),
                "--manifest", str(workdir / "data" / "manifest.json"),
                "--out-dir", str(workdir / "out2"),
                "--svg",
            ]
        )
        assert rc == 0
        assert tree_digest(scored) == tree_digest(workdir / "out2")

    def test_singleton_fully_directed_graph(self, workdir, fig1_schema):
        run_synth(workdir)
        pd = PdGraph(fig1_schema, (("a", "b"), ("a", "z"), ("b", "z")), ())
        save_pdgraph(pd, workdir / "full.json")
        rc = main(
            [
                "score",
                "--graph", str(workdir / "full.json"),
                "--manifest", str(workdir / "data" / "manifest.json"),
                "--out-dir", str(workdir / "single"),
            ]
        )
        assert rc == 0
        rows = read_scores(workdir / "single" / "scores.csv")
        assert len(rows) == 1
        assert float(rows[0]["gcf"]) == 1.0

    def test_subset_filter(self, workdir):
        run_synth(workdir)
        rc = main(
            [
                "score",
                "--graph", str(workdir / "gpd.json"),
                "--manifest", str(workdir / "data" / "manifest.json"),
                "--out-dir", str(workdir / "sub"),
                "--subset", "1",
            ]
        )
        assert rc == 0
        rows = read_scores(workdir / "sub" / "scores.csv")
        assert [r["graph_id"] for r in rows] == ["G1"]

    def test_missing_intervention_strict_exit_2(self, workdir):
        run_synth(workdir)
        manifest_path = workdir / "data" / "manifest.json"
        doc = json.loads(manifest_path.read_text())
        doc["interventions"] = [e for e in doc["interventions"] if e["node"] != "b" or e["value"] != 1]
        manifest_path.write_text(json.dumps(doc))
        rc = main(
            [
                "score",
                "--graph", str(workdir / "gpd.json"),
                "--manifest", str(manifest_path),
                "--out-dir", str(workdir / "out"),
            ]
        )
        assert rc == 2

    def test_missing_intervention_renormalize_succeeds(self, workdir):
        run_synth(workdir)
        manifest_path = workdir / "data" / "manifest.json"
        doc = json.loads(manifest_path.read_text())
        doc["interventions"] = [e for e in doc["interventions"] if e["node"] != "b" or e["value"] != 1]
        manifest_path.write_text(json.dumps(doc))
        rc = main(
            [
                "score",
                "--graph", str(workdir / "gpd.json"),
                "--manifest", str(manifest_path),
                "--out-dir", str(workdir / "renorm"),
                "--missing", "renormalize",
            ]
        )
        assert rc == 0

    def test_parse_error_exit_1(self, workdir):
        bad = workdir / "bad.json"
        bad.write_text("{broken")
        rc = main(
            [
                "score",
                "--graph", str(bad),
                "--manifest", str(bad),
                "--out-dir", str(workdir / "out"),
            ]
        )
        assert rc == 1

    def test_corrupt_dataset_exit_1(self, workdir):
        run_synth(workdir)
        obs = workdir / "data" / "obs.csv"
        obs.write_text(obs.read_text().replace("a,b,z", "a,b,z") + "9,9,9\n")
        rc = main(
            [
                "score",
                "--graph", str(workdir / "gpd.json"),
                "--manifest", str(workdir / "data" / "manifest.json"),
                "--out-dir", str(workdir / "out"),
            ]
        )
        assert rc == 1
