"""Sample entropy for graph signals and classical series.

The estimator follows the classical recipe (Richman & Moorman, 2000):
count template pairs whose Chebyshev distance stays within a tolerance
``epsilon = r * SD`` at embedding dimension m and again at m+1, and report
``-ln(A/B)`` of the two mean match counts. On a graph, a node's template is
its multi-hop profile: component 0 is the node's own value and component k
is the walk-weighted mean of its (k*lag)-hop neighbourhood, so a directed
path reproduces the classical sliding-window templates exactly.

Two counting modes are provided. "literal" draws the m-templates and the
(m+1)-templates from their own eligibility sets (nodes reachable one hop
beyond the deepest component each template uses), which on a path leaves
the extended set one template short of the classical range. "strict"
restricts both counts to the (m+1)-eligible set, which restores the
conditional-probability reading and guarantees A <= B, hence a
non-negative result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InsufficientPatterns,
    InvalidParameter,
    NoExtendedMatches,
    NoMatches,
)
from .graphs import _signal_array, eligible_nodes, walk_profiles

__all__ = [
    "SampEnParams",
    "SampEnResult",
    "EmbeddingSet",
    "tolerance",
    "chebyshev",
    "correlation_mean",
    "graph_embedding",
    "sampen_graph",
    "sampen_classic",
]

MODES = ("literal", "strict")
SD_CONVENTIONS = ("population", "sample")

# float64 scratch budget for the pairwise kernel (~64 MB per buffer)
_CHUNK_ELEMENTS = 8_388_608


@dataclass(frozen=True)
class SampEnParams:
    """Estimator tunables.

    Parameters
    ----------
    m : int
        Embedding dimension (template length), >= 1.
    r : float
        Tolerance factor; the matching radius is ``r * SD(signal)``.
    lag : int
        Hop step between template components, >= 1.
    mode : {"literal", "strict"}
        Template-set convention, see module docstring.
    sd_convention : {"population", "sample"}
        Divisor N or N-1 in the standard deviation.
    """

    m: int = 2
    r: float = 0.2
    lag: int = 1
    mode: str = "literal"
    sd_convention: str = "population"

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise InvalidParameter(f"m must be an integer >= 1, got {self.m!r}")
        if not self.r > 0:
            raise InvalidParameter(f"r must be > 0, got {self.r!r}")
        if not isinstance(self.lag, (int, np.integer)) or self.lag < 1:
            raise InvalidParameter(f"lag must be an integer >= 1, got {self.lag!r}")
        if self.mode not in MODES:
            raise InvalidParameter(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.sd_convention not in SD_CONVENTIONS:
            raise InvalidParameter(
                f"sd_convention must be one of {SD_CONVENTIONS}, got {self.sd_convention!r}"
            )


@dataclass(frozen=True)
class SampEnResult:
    """Entropy value plus the raw sums behind it, for auditability.

    ``a`` and ``b`` are the mean extended-match and match counts (self-match
    excluded); ``value = -ln(a / b)``. In literal mode the two template sets
    differ, so a marginally negative value is possible; strict mode
    guarantees ``a <= b`` and a non-negative value.
    """

    value: float
    a: float
    b: float
    n_templates_m: int
    n_templates_m1: int
    epsilon: float


@dataclass(frozen=True)
class EmbeddingSet:
    """Eligible nodes and their stacked m-component templates (one row each)."""

    node_ids: np.ndarray
    patterns: np.ndarray


def tolerance(signal, r, sd_convention="population"):
    """Matching radius ``r * SD`` of the raw signal values."""
    x = np.asarray(signal, dtype=np.float64).ravel()
    if x.size == 0:
        raise InvalidParameter("signal must be non-empty")
    if not r > 0:
        raise InvalidParameter(f"r must be > 0, got {r!r}")
    if sd_convention == "population":
        ddof = 0
    elif sd_convention == "sample":
        if x.size < 2:
            raise InvalidParameter("sample SD needs at least 2 values")
        ddof = 1
    else:
        raise InvalidParameter(
            f"sd_convention must be one of {SD_CONVENTIONS}, got {sd_convention!r}"
        )
    if np.ptp(x) == 0.0:
        return 0.0  # zero variance must give exactly zero radius
    return float(r) * float(np.std(x, ddof=ddof))


def chebyshev(a, b):
    """Maximum absolute component difference between two patterns."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"pattern shapes differ: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def _match_counts(patterns, epsilon):
    """Per-template counts of other templates within Chebyshev ``epsilon``.

    Direct pairwise evaluation, vectorised in row chunks. Templates are
    sorted by their first component so each chunk only scans the slice that
    can possibly match on that component; within the slice all components
    are compared, so counts are exact integers.
    """
    patterns = np.ascontiguousarray(patterns, dtype=np.float64)
    t, m = patterns.shape
    order = np.argsort(patterns[:, 0], kind="stable")
    p = np.ascontiguousarray(patterns[order])
    first = np.ascontiguousarray(p[:, 0])
    counts = np.empty(t, dtype=np.int64)
    chunk = int(max(1, min(t, _CHUNK_ELEMENTS // t)))
    for s in range(0, t, chunk):
        e = min(s + chunk, t)
        lo = int(np.searchsorted(first, first[s] - epsilon, side="left"))
        hi = int(np.searchsorted(first, first[e - 1] + epsilon, side="right"))
        acc = np.abs(p[s:e, 0, None] - first[None, lo:hi])
        if m > 1:
            d = np.empty_like(acc)
            for k in range(1, m):
                np.subtract(p[s:e, k, None], p[lo:hi, k][None, :], out=d)
                np.abs(d, out=d)
                np.maximum(acc, d, out=acc)
        # the row itself always sits in [lo, hi) and matches at distance 0
        counts[s:e] = (acc <= epsilon).sum(axis=1) - 1
    out = np.empty(t, dtype=np.int64)
    out[order] = counts
    return out


def correlation_mean(patterns, epsilon):
    """Mean fraction of matching template pairs, self-matches excluded.

    Returns ``(per_template, mean)`` where ``per_template[i]`` is the
    fraction of the other T-1 templates within ``epsilon`` of template i
    (inclusive threshold) and ``mean`` is their average.
    """
    patterns = np.asarray(patterns, dtype=np.float64)
    if patterns.ndim != 2:
        raise DimensionMismatch("patterns must be a 2-D template matrix")
    t = patterns.shape[0]
    if t < 2:
        raise InsufficientPatterns(
            f"need at least 2 templates, got {t}", n_templates_m=t
        )
    counts = _match_counts(patterns, float(epsilon))
    per_template = counts / (t - 1)
    mean = counts.sum() / (t * (t - 1))
    return per_template, float(mean)


def _embed(x, profiles, ids, n_components, lag):
    """Stack n_components-long templates for the given node ids."""
    patterns = np.empty((ids.size, n_components))
    patterns[:, 0] = x[ids]
    for k in range(1, n_components):
        prof = profiles[k * lag - 1]
        patterns[:, k] = prof.weighted_sums[ids] / prof.degrees[ids]
    return patterns


def graph_embedding(graph, signal, m, lag=1):
    """Multi-hop templates for every node where they are defined.

    Component 0 is the node's own value; component k is the walk-weighted
    mean over its (k*lag)-hop neighbourhood. Nodes lacking walks at any used
    hop are dropped.
    """
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m!r}")
    x = _signal_array(graph, signal)
    if m == 1:
        ids = np.arange(graph.n)
        profiles = []
    else:
        profiles = walk_profiles(graph, x, (m - 1) * lag)
        ids = eligible_nodes(profiles, m, lag)
    if ids.size == 0:
        raise InsufficientPatterns("no node has a defined embedding", n_templates_m=0)
    return EmbeddingSet(node_ids=ids, patterns=_embed(x, profiles, ids, m, lag))


def _sampen_from_patterns(patterns_m, patterns_m1, epsilon):
    _, b = correlation_mean(patterns_m, epsilon)
    _, a = correlation_mean(patterns_m1, epsilon)
    nb = patterns_m.shape[0]
    na = patterns_m1.shape[0]
    if b == 0.0:
        raise NoMatches(
            f"no template pair within epsilon={epsilon!r} at dimension m",
            epsilon=epsilon, n_templates_m=nb, n_templates_m1=na,
        )
    if a == 0.0:
        raise NoExtendedMatches(
            "matches at dimension m do not extend to m+1",
            b=b, epsilon=epsilon, n_templates_m=nb, n_templates_m1=na,
        )
    return SampEnResult(
        value=-math.log(a / b), a=a, b=b,
        n_templates_m=nb, n_templates_m1=na, epsilon=epsilon,
    )


def sampen_graph(graph, signal, params=SampEnParams()):
    """Sample entropy of a signal on a graph.

    Parameters
    ----------
    graph : Graph
    signal : array-like, length graph.n
    params : SampEnParams

    Returns
    -------
    SampEnResult

    Raises
    ------
    InsufficientPatterns
        Fewer than two nodes support an (m+1)-component template.
    NoMatches
        B = 0 (entropy undefined).
    NoExtendedMatches
        A = 0 with B > 0; carries B.
    """
    if not isinstance(params, SampEnParams):
        raise InvalidParameter("params must be a SampEnParams instance")
    x = _signal_array(graph, signal)
    m, lag = params.m, params.lag
    profiles = walk_profiles(graph, x, (m + 1) * lag)
    # Template sets require reachability one hop past the deepest component:
    # hops k*lag for k <= m (dimension m) and k <= m+1 (dimension m+1).
    set_m1 = eligible_nodes(profiles, m + 2, lag)
    set_m = set_m1 if params.mode == "strict" else eligible_nodes(profiles, m + 1, lag)
    if set_m1.size < 2:
        raise InsufficientPatterns(
            f"only {set_m1.size} node(s) support an (m+1)-component template",
            n_templates_m=set_m.size, n_templates_m1=set_m1.size,
        )
    eps = tolerance(x, params.r, params.sd_convention)
    patterns_m = _embed(x, profiles, set_m, m, lag)
    patterns_m1 = _embed(x, profiles, set_m1, m + 1, lag)
    return _sampen_from_patterns(patterns_m, patterns_m1, eps)


def sampen_classic(series, m=2, r=0.2, sd_convention="population"):
    """Classical sample entropy of a 1-D series.

    Overlapping windows ``x[i:i+m]`` and ``x[i:i+m+1]`` for
    i = 0..N-m-1 are matched under the inclusive Chebyshev threshold
    ``r * SD``; both dimensions use the same N-m templates.
    """
    x = np.asarray(series, dtype=np.float64).ravel()
    if not np.all(np.isfinite(x)):
        raise InvalidParameter("series values must be finite")
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m!r}")
    n = x.size
    t = n - m
    if t < 2:
        raise InsufficientPatterns(
            f"series of length {n} yields {max(t, 0)} templates at m={m}, need >= 2",
            n_templates_m=max(t, 0), n_templates_m1=max(t, 0),
        )
    eps = tolerance(x, r, sd_convention)
    patterns_m = np.lib.stride_tricks.sliding_window_view(x, m)[:t]
    patterns_m1 = np.lib.stride_tricks.sliding_window_view(x, m + 1)[:t]
    return _sampen_from_patterns(patterns_m, patterns_m1, eps)
