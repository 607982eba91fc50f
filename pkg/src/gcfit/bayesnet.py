"""Discrete Bayesian networks: exact joints, do-interventions, CPT fitting
and seeded forward sampling.

Interventions use truncated factorization: the intervened node's CPT is
deleted and the node clamped, leaving every other factor untouched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import GcfitError, InvalidState, ParseError, SchemaMismatch, UnknownVariable
from .graphs import Dag
from .tables import Dataset, ProbTable, VariableSchema, NORMALIZATION_TOL


@dataclass(frozen=True)
class Cpt:
    """Conditional distribution of one node given its parents.

    ``table`` has shape ``(*parent_cardinalities, child_cardinality)``;
    each row (last axis) is a normalized distribution over child states.
    """

    child: str
    parents: tuple[str, ...]
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        arr = np.asarray(self.table, dtype=float).copy()
        if np.any(arr < 0):
            raise GcfitError(f"CPT for {self.child!r} has negative entries")
        sums = arr.sum(axis=-1)
        if np.any(np.abs(sums - 1.0) > NORMALIZATION_TOL):
            raise GcfitError(f"CPT rows for {self.child!r} do not sum to 1")
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)


@dataclass(frozen=True)
class BayesNet:
    """A DAG plus one CPT per node; the joint is the product of the CPTs."""

    dag: Dag
    cpts: dict[str, Cpt]

    def __post_init__(self):
        schema = self.dag.schema
        if set(self.cpts) != set(schema.names):
            raise GcfitError("need exactly one CPT per node")
        for node, cpt in self.cpts.items():
            if cpt.child != node:
                raise GcfitError(f"CPT keyed {node!r} describes {cpt.child!r}")
            if cpt.parents != self.dag.parents(node):
                raise GcfitError(
                    f"CPT parents {cpt.parents} differ from DAG parents "
                    f"{self.dag.parents(node)} for {node!r}"
                )
            expected = tuple(schema.cardinality(p) for p in cpt.parents) + (
                schema.cardinality(node),
            )
            if cpt.table.shape != expected:
                raise GcfitError(
                    f"CPT for {node!r} has shape {cpt.table.shape}, expected {expected}"
                )

    @property
    def schema(self) -> VariableSchema:
        return self.dag.schema


def _factor_array(net: BayesNet, node: str) -> np.ndarray:
    """CPT of ``node`` broadcast to the full schema shape."""
    schema = net.schema
    cpt = net.cpts[node]
    axes_vars = cpt.parents + (node,)
    # cpt axes are already in schema order (parents sorted by schema index,
    # child last may be anywhere); permute to ascending schema index
    order = sorted(range(len(axes_vars)), key=lambda i: schema.index(axes_vars[i]))
    arr = np.transpose(cpt.table, order)
    shape = [1] * len(schema.names)
    for v in axes_vars:
        shape[schema.index(v)] = schema.cardinality(v)
    return arr.reshape(shape)


def joint(net: BayesNet) -> ProbTable:
    """Exact joint distribution: the product of all CPT factors."""
    arr = np.ones(net.schema.shape)
    for node in net.schema.names:
        arr = arr * _factor_array(net, node)
    return ProbTable(net.schema, arr)


def do_intervene(net: BayesNet, node: str, value: int) -> ProbTable:
    """P(rest | do(node)=value) by truncated factorization.

    Returns a normalized table over every variable except ``node``.
    """
    schema = net.schema
    axis = schema.index(node)
    if not 0 <= value < schema.cardinality(node):
        raise InvalidState(f"state {value} out of range for {node!r}")
    arr = np.ones(schema.shape)
    for other in schema.names:
        if other != node:
            arr = arr * _factor_array(net, other)
    sliced = np.take(arr, value, axis=axis)
    rest = schema.subset(set(schema.names) - {node})
    return ProbTable.from_weights(rest, sliced)


def fit_cpts(dag: Dag, data: Dataset, smoothing: float = 0.0) -> BayesNet:
    """Maximum-likelihood (optionally Laplace-smoothed) CPTs from data.

    Row = (count(child=c, parents=pi) + smoothing) /
          (count(parents=pi) + smoothing * card(child)).
    Rows with zero total fall back to uniform.
    """
    if data.schema != dag.schema:
        raise SchemaMismatch("dataset schema differs from DAG schema")
    if smoothing < 0:
        raise GcfitError("smoothing must be nonnegative")
    schema = dag.schema
    cpts = {}
    for node in schema.names:
        parents = dag.parents(node)
        fam = parents + (node,)
        fam_cards = tuple(schema.cardinality(v) for v in fam)
        cols = data.rows[:, [schema.index(v) for v in fam]]
        if len(data):
            flat = np.ravel_multi_index(cols.T, fam_cards)
            counts = np.bincount(flat, minlength=int(np.prod(fam_cards))).astype(float)
        else:
            counts = np.zeros(int(np.prod(fam_cards)))
        counts = counts.reshape(fam_cards) + smoothing
        totals = counts.sum(axis=-1, keepdims=True)
        card = schema.cardinality(node)
        table = np.where(totals > 0, counts / np.where(totals > 0, totals, 1.0), 1.0 / card)
        cpts[node] = Cpt(node, parents, table)
    return BayesNet(dag, cpts)


def _node_rng(seed, position: int) -> np.random.Generator:
    """One deterministic substream per node, keyed by topological position."""
    if isinstance(seed, np.random.SeedSequence):
        base = seed
    else:
        base = np.random.SeedSequence(int(seed))
    return np.random.default_rng(np.random.SeedSequence(base.entropy, spawn_key=base.spawn_key + (position,)))


def _draw_column(net: BayesNet, node: str, columns: dict[str, np.ndarray], n: int,
                 rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF sample of one node given already-sampled parent columns."""
    schema = net.schema
    cpt = net.cpts[node]
    card = schema.cardinality(node)
    u = rng.random(n)
    if cpt.parents:
        pcards = tuple(schema.cardinality(p) for p in cpt.parents)
        row_idx = np.ravel_multi_index(
            tuple(columns[p] for p in cpt.parents), pcards
        )
        cum = np.cumsum(cpt.table.reshape(-1, card), axis=1)[row_idx]
    else:
        cum = np.broadcast_to(np.cumsum(cpt.table), (n, card))
    vals = (cum < u[:, None]).sum(axis=1)
    return np.minimum(vals, card - 1)


def sample(net: BayesNet, n: int, seed) -> Dataset:
    """Forward (ancestral) sampling; identical (net, n, seed) gives an
    identical dataset."""
    if n < 1:
        raise GcfitError("n must be >= 1")
    schema = net.schema
    columns: dict[str, np.ndarray] = {}
    for pos, node in enumerate(net.dag.topological_order()):
        columns[node] = _draw_column(net, node, columns, n, _node_rng(seed, pos))
    rows = np.stack([columns[name] for name in schema.names], axis=1)
    return Dataset(schema, rows)


def sample_do(net: BayesNet, node: str, value: int, n: int, seed) -> Dataset:
    """Forward sampling of the mutilated net with ``node`` clamped.

    The output keeps all columns; the intervened column is constant.
    """
    if n < 1:
        raise GcfitError("n must be >= 1")
    schema = net.schema
    if not 0 <= value < schema.cardinality(node):
        raise InvalidState(f"state {value} out of range for {node!r}")
    columns: dict[str, np.ndarray] = {}
    for pos, other in enumerate(net.dag.topological_order()):
        if other == node:
            columns[other] = np.full(n, value, dtype=np.int64)
        else:
            columns[other] = _draw_column(net, other, columns, n, _node_rng(seed, pos))
    rows = np.stack([columns[name] for name in schema.names], axis=1)
    return Dataset(schema, rows)


# ---------------------------------------------------------------------------
# JSON serialization

def bayesnet_to_json(net: BayesNet) -> str:
    schema = net.schema
    doc = {
        "variables": [
            {"name": n, "cardinality": c}
            for n, c in zip(schema.names, schema.cardinalities)
        ],
        "edges": [list(e) for e in net.dag.edges],
        "cpts": {
            node: {
                "parents": list(net.cpts[node].parents),
                "rows": net.cpts[node]
                .table.reshape(-1, schema.cardinality(node))
                .tolist(),
            }
            for node in schema.names
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def bayesnet_from_json(text: str, path=None) -> BayesNet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from None
    if not isinstance(doc, dict) or "variables" not in doc:
        raise ParseError("missing 'variables' block", path=path)
    names = []
    cards = []
    try:
        for v in doc["variables"]:
            names.append(v["name"])
            cards.append(int(v["cardinality"]))
        schema = VariableSchema(tuple(names), tuple(cards))
        dag = Dag(schema, tuple(tuple(e) for e in doc.get("edges", [])))
    except (KeyError, TypeError, ValueError, GcfitError) as exc:
        raise ParseError(f"bad network structure: {exc}", path=path) from None
    cpts = {}
    for node in schema.names:
        try:
            entry = doc["cpts"][node]
            parents = tuple(entry["parents"])
            rows = np.asarray(entry["rows"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad CPT for {node!r}: {exc}", path=path) from None
        if np.any(np.abs(rows.sum(axis=-1) - 1.0) > 1e-6):
            raise ParseError(f"CPT rows for {node!r} fail normalization", path=path)
        shape = tuple(schema.cardinality(p) for p in parents) + (schema.cardinality(node),)
        # renormalize within the accepted 1e-6 slack so the Cpt invariant holds
        rows = rows / rows.sum(axis=-1, keepdims=True)
        try:
            cpts[node] = Cpt(node, parents, rows.reshape(shape))
        except (ValueError, GcfitError) as exc:
            raise ParseError(f"bad CPT for {node!r}: {exc}", path=path) from None
    try:
        return BayesNet(dag, cpts)
    except GcfitError as exc:
        raise ParseError(f"inconsistent network: {exc}", path=path) from None


def load_bayesnet(path) -> BayesNet:
    with open(path) as fh:
        return bayesnet_from_json(fh.read(), path=path)


def save_bayesnet(net: BayesNet, path) -> None:
    with open(path, "w") as fh:
        fh.write(bayesnet_to_json(net))
