"""Scikit-learn style front end: fit a topology, transform signals."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .entropy import SampEnParams, sampen_graph
from .errors import EntropyUndefined
from .validation import as_graph, check_signal_matrix

__all__ = ["GraphSampleEntropy"]


class GraphSampleEntropy(TransformerMixin, BaseEstimator):
    """Sample-entropy feature extractor for signals living on a fixed graph.

    ``fit`` takes the topology (a :class:`~graphsampen.graphs.Graph` or an
    ``(n, n)`` adjacency, dense or sparse); ``transform`` maps each row of a
    ``(n_signals, n)`` matrix to the sample entropy of that signal on the
    fitted graph. Composes with sklearn pipelines and grid search via the
    inherited ``get_params``/``set_params``.

    Parameters
    ----------
    m : int, default 2
        Embedding dimension.
    r : float, default 0.2
        Tolerance factor; the matching radius is ``r * SD`` per signal.
    lag : int, default 1
        Hop step between template components.
    mode : {"literal", "strict"}, default "literal"
        Template-set convention (strict guarantees non-negative values).
    sd_convention : {"population", "sample"}, default "population"
    directed : bool or None, default None
        Directedness of an adjacency passed to ``fit``; None infers it
        from symmetry (a Graph instance keeps its own flag).
    on_undefined : {"raise", "nan"}, default "raise"
        What to do when a row's entropy is undefined (no matches or too
        few templates): raise the library error or emit NaN.

    Examples
    --------
    >>> from graphsampen import GraphSampleEntropy, build_path
    >>> import numpy as np
    >>> est = GraphSampleEntropy(m=1, r=0.4).fit(build_path(6))
    >>> x = np.array([0.0, 0.0, 0.0, 1.0, 0.0, 1.0])
    >>> float(est.transform(x)[0, 0])  # doctest: +ELLIPSIS
    1.28093...
    """

    def __init__(self, m=2, r=0.2, lag=1, mode="literal",
                 sd_convention="population", directed=None, on_undefined="raise"):
        self.m = m
        self.r = r
        self.lag = lag
        self.mode = mode
        self.sd_convention = sd_convention
        self.directed = directed
        self.on_undefined = on_undefined

    def _params(self):
        return SampEnParams(m=self.m, r=self.r, lag=self.lag,
                            mode=self.mode, sd_convention=self.sd_convention)

    def fit(self, X, y=None):
        """Store the topology. ``X`` is the graph, not a data matrix."""
        self._params()  # fail fast on bad hyperparameters
        if self.on_undefined not in ("raise", "nan"):
            raise ValueError(
                f"on_undefined must be 'raise' or 'nan', got {self.on_undefined!r}"
            )
        self.graph_ = as_graph(X, directed=self.directed)
        self.n_features_in_ = self.graph_.n
        return self

    def transform(self, X):
        """Entropy of each signal row; returns an ``(n_signals, 1)`` column."""
        if not hasattr(self, "graph_"):
            raise NotFittedError(
                "This GraphSampleEntropy instance is not fitted yet; "
                "call fit with the graph topology first."
            )
        signals = check_signal_matrix(self.graph_, X)
        params = self._params()
        out = np.empty((signals.shape[0], 1))
        for i, row in enumerate(signals):
            try:
                out[i, 0] = sampen_graph(self.graph_, row, params).value
            except EntropyUndefined:
                if self.on_undefined == "raise":
                    raise
                out[i, 0] = np.nan
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(["sample_entropy"], dtype=object)
