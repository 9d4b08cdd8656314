"""Input validation helpers shared by the estimator and the CLI."""

from __future__ import annotations

import numpy as np
from scipy import sparse

from .errors import DimensionMismatch, InvalidParameter
from .graphs import Graph

__all__ = ["as_graph", "check_signal", "check_signal_matrix"]


def as_graph(obj, directed=None):
    """Coerce a Graph, sparse matrix, or dense square array into a Graph.

    ``directed=None`` keeps a Graph's own flag or infers one from symmetry.
    """
    if isinstance(obj, Graph):
        if directed is not None and bool(directed) != obj.directed:
            raise InvalidParameter(
                f"graph is {'directed' if obj.directed else 'undirected'}, "
                f"directed={directed!r} was requested"
            )
        return obj
    if sparse.issparse(obj) or isinstance(obj, np.ndarray) or hasattr(obj, "__array__"):
        return Graph.from_adjacency(obj, directed=directed)
    raise InvalidParameter(
        f"cannot interpret {type(obj).__name__!r} as a graph adjacency"
    )


def check_signal(graph, values):
    """Validate one signal: 1-D, finite, one value per node."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != graph.n:
        raise DimensionMismatch(
            f"signal of shape {x.shape} does not fit a graph with {graph.n} nodes"
        )
    if not np.all(np.isfinite(x)):
        raise InvalidParameter("signal values must be finite")
    return x


def check_signal_matrix(graph, values):
    """Validate a batch of signals, one row each; 1-D input becomes one row."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != graph.n:
        raise DimensionMismatch(
            f"signal matrix of shape {x.shape} does not fit a graph with "
            f"{graph.n} nodes (expected columns = nodes)"
        )
    if not np.all(np.isfinite(x)):
        raise InvalidParameter("signal values must be finite")
    return x
