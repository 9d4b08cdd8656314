"""Sample entropy for signals on graphs.

The measure embeds each node as its multi-hop walk-weighted neighbourhood
profile and applies the classical fixed-tolerance template-matching recipe,
so it reduces to ordinary sample entropy on directed paths and behaves as a
grid analogue of the image variant, while extending to arbitrary directed,
undirected, binary, and weighted graphs.
"""

from .entropy import (
    EmbeddingSet,
    SampEnParams,
    SampEnResult,
    chebyshev,
    correlation_mean,
    graph_embedding,
    sampen_classic,
    sampen_graph,
    tolerance,
)
from .errors import (
    CoverageError,
    DegenerateDegree,
    DimensionMismatch,
    EmptyGraph,
    EntropyUndefined,
    FormatError,
    GraphSampEnError,
    InsufficientPatterns,
    InvalidParameter,
    InvalidPermutation,
    InvalidSize,
    NoExtendedMatches,
    NoMatches,
    OracleTooLarge,
    ParseError,
    WriteError,
)
from .estimator import GraphSampleEntropy
from .experiments import SweepRow, SweepSpec, run_benchmark, run_sweep, write_results
from .generators import (
    Image,
    er_graph,
    er_p_for_degree,
    heat_smooth,
    logistic_map,
    mix2d,
    piecewise_signal,
    smooth_wgn,
    uniform_signal,
    ws_graph,
)
from .graphs import (
    Graph,
    WalkProfile,
    build_grid8,
    build_lane_topology,
    build_path,
    eligible_nodes,
    permute,
    walk_profiles,
)
from .oracle import sampen_oracle
from .validation import as_graph, check_signal, check_signal_matrix

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "WalkProfile",
    "build_path",
    "build_grid8",
    "build_lane_topology",
    "walk_profiles",
    "eligible_nodes",
    "permute",
    "SampEnParams",
    "SampEnResult",
    "EmbeddingSet",
    "tolerance",
    "chebyshev",
    "correlation_mean",
    "graph_embedding",
    "sampen_graph",
    "sampen_classic",
    "sampen_oracle",
    "GraphSampleEntropy",
    "Image",
    "logistic_map",
    "mix2d",
    "er_graph",
    "er_p_for_degree",
    "ws_graph",
    "heat_smooth",
    "smooth_wgn",
    "piecewise_signal",
    "uniform_signal",
    "SweepSpec",
    "SweepRow",
    "run_sweep",
    "run_benchmark",
    "write_results",
    "as_graph",
    "check_signal",
    "check_signal_matrix",
    "GraphSampEnError",
    "InvalidParameter",
    "InvalidSize",
    "DimensionMismatch",
    "InvalidPermutation",
    "EntropyUndefined",
    "InsufficientPatterns",
    "NoMatches",
    "NoExtendedMatches",
    "OracleTooLarge",
    "DegenerateDegree",
    "ParseError",
    "FormatError",
    "EmptyGraph",
    "CoverageError",
    "WriteError",
]
