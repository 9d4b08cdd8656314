"""Shared fixtures and independent reference helpers.

The helpers here are deliberately naive (dense powers, explicit loops,
two-pass statistics) so they stay independent of the library's fast paths.
"""

import numpy as np
import pytest

from graphsampen import Graph


def two_pass_sd(values, convention="population"):
    """Textbook two-pass standard deviation."""
    vals = [float(v) for v in values]
    n = len(vals)
    mean = sum(vals) / n
    ss = sum((v - mean) ** 2 for v in vals)
    return (ss / (n if convention == "population" else n - 1)) ** 0.5


def dense_walk_reference(adj_dense, x, max_hop):
    """(A^L x, A^L 1) for L = 1..max_hop via explicit dense matrix powers."""
    a = np.asarray(adj_dense, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    sums, degs = [], []
    p = np.eye(a.shape[0])
    for _ in range(max_hop):
        p = p @ a
        sums.append(p @ x)
        degs.append(p @ np.ones(a.shape[0]))
    return sums, degs


def brute_force_pair_counts(patterns, epsilon):
    """O(T^2) double loop over template pairs, self excluded."""
    pats = np.asarray(patterns, dtype=np.float64)
    t = pats.shape[0]
    counts = np.zeros(t, dtype=np.int64)
    for i in range(t):
        for j in range(t):
            if i == j:
                continue
            if max(abs(a - b) for a, b in zip(pats[i], pats[j])) <= epsilon:
                counts[i] += 1
    return counts


def random_graph(rng, n_max=40, directed=None, weighted=None, ensure_edges=True):
    """Random test graph: ER skeleton, optional uniform weights."""
    n = int(rng.integers(4, n_max + 1))
    if directed is None:
        directed = bool(rng.integers(2))
    if weighted is None:
        weighted = bool(rng.integers(2))
    density = rng.uniform(0.08, 0.5)
    mask = rng.random((n, n)) < density
    np.fill_diagonal(mask, False)
    if not directed:
        mask = np.triu(mask, 1)
        mask = mask | mask.T
    if ensure_edges and not mask.any():
        mask[0, 1] = True
        if not directed:
            mask[1, 0] = True
    adj = mask.astype(np.float64)
    if weighted:
        w = rng.uniform(0.5, 2.0, (n, n))
        if not directed:
            w = np.triu(w, 1)
            w = w + w.T
        adj = adj * w
    return Graph.from_adjacency(adj, directed=directed)


def edge_set(graph):
    """Stored entries as a set of (src, dst, weight) triples."""
    coo = graph.adjacency.tocoo()
    return {(int(i), int(j), float(w)) for i, j, w in zip(coo.row, coo.col, coo.data)}


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
