"""Walkthrough: the three-node example, end to end.

A partially directed graph leaves one edge (a-b) unoriented.  We build a
ground-truth net with a->b, synthesize observational and interventional
datasets, and check that the causal-fit score picks the true orientation
while the plain goodness of fit barely separates the two candidates.

Run:  python3 demos/fig_three_node.py
"""

import tempfile
from pathlib import Path

import numpy as np

import gcfit as g
from gcfit.cli import main


def build_truth():
    schema = g.VariableSchema(("a", "b", "z"), (2, 2, 2))
    dag = g.Dag(schema, (("a", "b"), ("a", "z"), ("b", "z")))
    rng = np.random.default_rng(1)

    def row(shape):
        table = np.empty(shape + (2,))
        for idx in np.ndindex(*shape):
            r = rng.uniform(0.15, 0.85, 2)
            table[idx] = r / r.sum()
        return table

    cpts = {
        "a": g.Cpt("a", (), row(())),
        "b": g.Cpt("b", ("a",), row((2,))),
        "z": g.Cpt("z", ("a", "b"), row((2, 2))),
    }
    return g.BayesNet(dag, cpts)


def run():
    net = build_truth()
    schema = net.schema
    pd = g.PdGraph(schema, (("a", "z"), ("b", "z")), (("a", "b"),))

    print("Candidate orientations of the partially directed graph:")
    for member in g.enumerate_orientations(pd):
        print(f"  {member.graph_id}: {member.dag.edges}")

    # Exact route: score straight from the truth net's distributions.
    tables = g.InterventionTables.from_net(net)
    dmap = g.do_divergence_map(schema.names, tables)
    print("\nExact do-divergences (a is a root, so intervening == conditioning):")
    for node, value in dmap.items():
        print(f"  D_{node} = {value:.6f}")
    for record in g.score_set(g.enumerate_orientations(pd), tables):
        print(f"  {record.graph_id}: GCF = {record.gcf:+.0f}, GF = {record.gf}")

    # Finite-sample route: the CLI pipeline on synthesized CSV files.
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        g.save_bayesnet(net, tmp / "truth.json")
        g.save_pdgraph(pd, tmp / "gpd.json")
        main(["synth", "--net", str(tmp / "truth.json"), "--n-obs", "50000",
              "--n-do", "20000", "--seed", "11", "--out-dir", str(tmp / "data")])
        main(["score", "--graph", str(tmp / "gpd.json"),
              "--manifest", str(tmp / "data" / "manifest.json"),
              "--out-dir", str(tmp / "out"), "--svg"])
        print("\nscores.csv from the 50k-sample pipeline:")
        print((tmp / "out" / "scores.csv").read_text())


if __name__ == "__main__":
    run()
