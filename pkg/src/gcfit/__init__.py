"""gcfit: goodness-of-fit and goodness-of-causal-fit scoring for
candidate DAGs against observational and interventional data."""

__version__ = "0.1.0"

from .bayesnet import (
    BayesNet,
    Cpt,
    bayesnet_from_json,
    bayesnet_to_json,
    do_intervene,
    fit_cpts,
    joint,
    load_bayesnet,
    sample,
    sample_do,
    save_bayesnet,
)
from .divergences import euclidean_distance_sq, kl_divergence, pearson_divergence
from .errors import (
    EmptyDataset,
    EnumerationLimit,
    GcfitError,
    InvalidState,
    MissingIntervention,
    ParseError,
    SchemaMismatch,
    UnknownEdge,
    UnknownVariable,
    ZeroProbabilityEvidence,
)
from .graphs import (
    Dag,
    DagSet,
    PdGraph,
    TaggedDag,
    enumerate_orientations,
    is_acyclic,
    load_pdgraph,
    pdgraph_from_json,
    pdgraph_to_json,
    save_pdgraph,
)
from .scoring import (
    InterventionBundle,
    InterventionTables,
    ScoreRecord,
    do_divergence,
    do_divergence_detail,
    do_divergence_map,
    dodiv_distance,
    edge_sign,
    gcf,
    gcf_abs,
    gcf_detail,
    gf,
    gf_from_table,
    score_set,
)
from .tables import Dataset, ProbTable, VariableSchema, empirical_from_dataset

__all__ = [
    "BayesNet",
    "Cpt",
    "Dag",
    "DagSet",
    "Dataset",
    "EmptyDataset",
    "EnumerationLimit",
    "GcfitError",
    "InterventionBundle",
    "InterventionTables",
    "InvalidState",
    "MissingIntervention",
    "ParseError",
    "PdGraph",
    "ProbTable",
    "SchemaMismatch",
    "ScoreRecord",
    "TaggedDag",
    "UnknownEdge",
    "UnknownVariable",
    "VariableSchema",
    "ZeroProbabilityEvidence",
    "bayesnet_from_json",
    "bayesnet_to_json",
    "do_divergence",
    "do_divergence_detail",
    "do_divergence_map",
    "do_intervene",
    "dodiv_distance",
    "edge_sign",
    "empirical_from_dataset",
    "enumerate_orientations",
    "euclidean_distance_sq",
    "fit_cpts",
    "gcf",
    "gcf_abs",
    "gcf_detail",
    "gf",
    "gf_from_table",
    "is_acyclic",
    "joint",
    "kl_divergence",
    "load_bayesnet",
    "load_pdgraph",
    "pdgraph_from_json",
    "pdgraph_to_json",
    "pearson_divergence",
    "sample",
    "sample_do",
    "save_bayesnet",
    "save_pdgraph",
    "score_set",
]
