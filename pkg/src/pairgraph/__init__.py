"""Photon-pair experiments as edge-colored weighted multigraphs.

The package runs the correspondence in both directions: simulate a graph
into the quantum state its coincidences post-select, and synthesize a
verified graph for a named target state, with feasibility analysis for
three-party rank vectors in between.
"""

from .analysis import (
    DICKE_CLASS_NAMES,
    OLIVER_CLASS_NAMES,
    Feasibility,
    FeasibilityVerdict,
    WeightClass,
    color_weight_classes,
    group_matchings_by_term,
    solve_weights,
    srv_feasibility,
    srv_table,
    w_weight_closed_form,
)
from .constructors import (
    SynthesisReport,
    SynthesisResult,
    ame_graph,
    general_dicke_graph,
    ghz_graph,
    path_labels,
    srv_graph,
    symmetric_dicke_graph,
    synthesize,
    w_graph,
)
from .errors import (
    DocumentError,
    PairGraphError,
    UnrealizableError,
    VerificationError,
    WeightSolveError,
)
from .graphs import (
    Edge,
    ExperimentGraph,
    PerfectMatching,
    build_graph,
    enumerate_perfect_matchings,
    is_perfect_matching,
    max_disjoint_perfect_matchings,
    reweighted,
)
from .io import (
    SCHEMA_VERSION,
    document_to_graph,
    export_dot,
    export_experiment,
    graph_from_json,
    graph_to_document,
    graph_to_json,
    read_graph,
    write_graph,
)
from .states import (
    QuantumState,
    classify,
    is_maximally_entangled,
    normalize,
    reference_state,
    schmidt_rank_vector,
    state_from_graph,
    state_from_terms,
    states_equal,
    strip_trigger,
)
from .targets import AME, GHZ, SRV, Dicke, TargetSpec, W, label

__version__ = "0.1.0"

__all__ = [
    "AME",
    "DICKE_CLASS_NAMES",
    "Dicke",
    "DocumentError",
    "Edge",
    "ExperimentGraph",
    "Feasibility",
    "FeasibilityVerdict",
    "GHZ",
    "OLIVER_CLASS_NAMES",
    "PairGraphError",
    "PerfectMatching",
    "QuantumState",
    "SCHEMA_VERSION",
    "SRV",
    "SynthesisReport",
    "SynthesisResult",
    "TargetSpec",
    "UnrealizableError",
    "VerificationError",
    "W",
    "WeightClass",
    "WeightSolveError",
    "ame_graph",
    "build_graph",
    "classify",
    "color_weight_classes",
    "document_to_graph",
    "enumerate_perfect_matchings",
    "export_dot",
    "export_experiment",
    "general_dicke_graph",
    "ghz_graph",
    "graph_from_json",
    "graph_to_document",
    "graph_to_json",
    "group_matchings_by_term",
    "is_maximally_entangled",
    "is_perfect_matching",
    "label",
    "max_disjoint_perfect_matchings",
    "normalize",
    "path_labels",
    "read_graph",
    "reference_state",
    "reweighted",
    "schmidt_rank_vector",
    "solve_weights",
    "srv_feasibility",
    "srv_graph",
    "srv_table",
    "state_from_graph",
    "state_from_terms",
    "states_equal",
    "strip_trigger",
    "symmetric_dicke_graph",
    "synthesize",
    "w_graph",
    "w_weight_closed_form",
    "write_graph",
]
