"""DAGs, partially directed graphs, and acyclic-orientation enumeration.

A partially directed graph is what structure learning typically hands
back: some edges oriented, some not.  The candidate set of fully
directed models is obtained by orienting every undirected edge in every
possible way and keeping the acyclic results.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import EnumerationLimit, GcfitError, ParseError, UnknownVariable
from .tables import VariableSchema

DEFAULT_ENUMERATION_CAP = 24


def _check_endpoints(schema: VariableSchema, pairs) -> None:
    for a, b in pairs:
        schema.index(a)
        schema.index(b)
        if a == b:
            raise GcfitError(f"self-loop on {a!r}")


def topological_order(schema: VariableSchema, edges) -> list[str] | None:
    """Kahn's algorithm; ties broken by schema order.  None if cyclic."""
    indeg = {n: 0 for n in schema.names}
    children: dict[str, list[str]] = {n: [] for n in schema.names}
    for parent, child in edges:
        indeg[child] += 1
        children[parent].append(child)
    ready = [n for n in schema.names if indeg[n] == 0]
    order = []
    while ready:
        node = min(ready, key=schema.index)
        ready.remove(node)
        order.append(node)
        for c in children[node]:
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
    return order if len(order) == len(schema.names) else None


def is_acyclic(schema: VariableSchema, edges) -> bool:
    """True iff the directed edge set admits a topological order."""
    return topological_order(schema, edges) is not None


@dataclass(frozen=True)
class Dag:
    """Directed acyclic graph over a schema's variables."""

    schema: VariableSchema
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        edges = tuple(sorted((str(a), str(b)) for a, b in self.edges))
        if len(set(edges)) != len(edges):
            raise GcfitError("duplicate edge")
        _check_endpoints(self.schema, edges)
        if not is_acyclic(self.schema, edges):
            raise GcfitError("edge set contains a directed cycle")
        object.__setattr__(self, "edges", edges)

    def parents(self, node: str) -> tuple[str, ...]:
        self.schema.index(node)
        ps = [a for a, b in self.edges if b == node]
        return tuple(sorted(ps, key=self.schema.index))

    def topological_order(self) -> list[str]:
        order = topological_order(self.schema, self.edges)
        assert order is not None
        return order

    def skeleton(self) -> frozenset[tuple[str, str]]:
        """Edge set with orientations erased; pairs sorted lexicographically."""
        return frozenset(tuple(sorted(e)) for e in self.edges)

    def has_edge(self, a: str, b: str) -> bool:
        """True if a-b is present in either direction."""
        return (a, b) in self.edges or (b, a) in self.edges

    def reversed(self) -> "Dag":
        return Dag(self.schema, tuple((b, a) for a, b in self.edges))


@dataclass(frozen=True)
class PdGraph:
    """Graph with both directed and undirected edges."""

    schema: VariableSchema
    directed: tuple[tuple[str, str], ...]
    undirected: tuple[tuple[str, str], ...]

    def __post_init__(self):
        directed = tuple(sorted((str(a), str(b)) for a, b in self.directed))
        undirected = tuple(sorted(tuple(sorted((str(a), str(b)))) for a, b in self.undirected))
        _check_endpoints(self.schema, directed)
        _check_endpoints(self.schema, undirected)
        if len(set(directed)) != len(directed) or len(set(undirected)) != len(undirected):
            raise GcfitError("duplicate edge")
        seen = {tuple(sorted(e)) for e in directed}
        if seen & set(undirected):
            raise GcfitError("edge appears both directed and undirected")
        if len(seen) != len(directed):
            raise GcfitError("pair appears twice in directed part")
        if not is_acyclic(self.schema, directed):
            raise GcfitError("directed part contains a cycle")
        object.__setattr__(self, "directed", directed)
        object.__setattr__(self, "undirected", undirected)


@dataclass(frozen=True)
class TaggedDag:
    """A DAG plus the orientation vector that produced it.

    ``orientation`` has one character per undirected edge of the source
    PD graph: '0' orients the edge from its lexicographically smaller
    endpoint to the larger, '1' the reverse.  ``graph_id`` is the vector
    prefixed with 'G', stable across runs.
    """

    graph_id: str
    orientation: str
    dag: Dag


@dataclass(frozen=True)
class DagSet:
    """Ordered set of tagged DAGs generated from one PD graph."""

    members: tuple[TaggedDag, ...]
    source_undirected: tuple[tuple[str, str], ...] = ()

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def subset(self, orientations) -> "DagSet":
        """Members whose orientation vector is in ``orientations``."""
        wanted = set(orientations)
        known = {m.orientation for m in self.members}
        missing = wanted - known
        if missing:
            raise GcfitError(f"unknown orientation vectors: {sorted(missing)}")
        return DagSet(
            tuple(m for m in self.members if m.orientation in wanted),
            self.source_undirected,
        )


def enumerate_orientations(g: PdGraph, max_undirected: int = DEFAULT_ENUMERATION_CAP) -> DagSet:
    """All acyclic ways of orienting the undirected edges of ``g``.

    Orientation vectors are emitted in lexicographic order; cyclic
    orientations are dropped.
    """
    und = g.undirected  # already sorted lexicographically
    if len(und) > max_undirected:
        raise EnumerationLimit(len(und), max_undirected)
    members = []
    for bits in itertools.product("01", repeat=len(und)):
        oriented = tuple(
            (a, b) if bit == "0" else (b, a) for bit, (a, b) in zip(bits, und)
        )
        edges = g.directed + oriented
        if not is_acyclic(g.schema, edges):
            continue
        vec = "".join(bits)
        members.append(TaggedDag("G" + vec, vec, Dag(g.schema, edges)))
    return DagSet(tuple(members), und)


# ---------------------------------------------------------------------------
# JSON serialization.  Dag files use the same layout with empty "undirected".

def schema_to_obj(schema: VariableSchema) -> list:
    return [
        {"name": n, "cardinality": c}
        for n, c in zip(schema.names, schema.cardinalities)
    ]


def schema_from_obj(obj, path=None) -> VariableSchema:
    try:
        names = tuple(v["name"] for v in obj)
        cards = tuple(int(v["cardinality"]) for v in obj)
        return VariableSchema(names, cards)
    except (KeyError, TypeError, ValueError, GcfitError) as exc:
        raise ParseError(f"bad variables block: {exc}", path=path) from None


def pdgraph_to_json(g: PdGraph) -> str:
    doc = {
        "variables": schema_to_obj(g.schema),
        "directed": [list(e) for e in g.directed],
        "undirected": [list(e) for e in g.undirected],
    }
    return json.dumps(doc, indent=2) + "\n"


def pdgraph_from_json(text: str, path=None) -> PdGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from None
    if not isinstance(doc, dict) or "variables" not in doc:
        raise ParseError("missing 'variables' block", path=path)
    schema = schema_from_obj(doc["variables"], path=path)
    try:
        directed = tuple(tuple(e) for e in doc.get("directed", []))
        undirected = tuple(tuple(e) for e in doc.get("undirected", []))
        return PdGraph(schema, directed, undirected)
    except (GcfitError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph: {exc}", path=path) from None


def load_pdgraph(path) -> PdGraph:
    with open(path) as fh:
        return pdgraph_from_json(fh.read(), path=path)


def save_pdgraph(g: PdGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(pdgraph_to_json(g))
