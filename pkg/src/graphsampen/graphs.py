"""Graph containers, regular-topology constructors, and walk propagation.

A :class:`Graph` is a fixed node set ``[0, n)`` plus a sparse non-negative
adjacency in CSR form; ``adjacency[i, j] = w > 0`` encodes an edge i -> j of
weight w. Undirected graphs store both directions with identical weights.

Walk propagation never materialises matrix powers: the hop-L weighted sums
``(A^L x)_i`` and hop-L degrees ``(A^L 1)_i`` are produced by iterated
sparse mat-vec, which is all the multi-hop embedding needs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import (
    DimensionMismatch,
    InvalidParameter,
    InvalidPermutation,
    InvalidSize,
)

__all__ = [
    "Graph",
    "WalkProfile",
    "build_path",
    "build_grid8",
    "build_lane_topology",
    "walk_profiles",
    "eligible_nodes",
    "permute",
]

# Moore neighbourhood offsets, split by lexicographic orientation.
_FORWARD_OFFSETS = ((0, 1), (1, -1), (1, 0), (1, 1))
_ALL_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


@dataclass(frozen=True, eq=False)
class Graph:
    """Weighted (di)graph on nodes ``0..n-1`` with CSR adjacency.

    Parameters
    ----------
    n : int
        Node count, at least 1.
    directed : bool
        If False the adjacency must be exactly symmetric.
    adjacency : scipy.sparse.csr_array
        Shape ``(n, n)``, strictly positive stored weights. Treated as
        immutable after construction.
    """

    n: int
    directed: bool
    adjacency: sparse.csr_array

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidSize(f"node count must be an integer >= 1, got {self.n!r}")
        a = sparse.csr_array(self.adjacency, dtype=np.float64, copy=True)
        if a.shape != (self.n, self.n):
            raise DimensionMismatch(
                f"adjacency shape {a.shape} does not match node count {self.n}"
            )
        a.sum_duplicates()
        a.eliminate_zeros()
        if a.nnz and a.data.min() <= 0:
            raise InvalidParameter("edge weights must be strictly positive")
        if not self.directed and (a != a.T).nnz != 0:
            raise InvalidParameter(
                "undirected graph requires an exactly symmetric adjacency"
            )
        for buf in (a.data, a.indices, a.indptr):
            buf.setflags(write=False)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_edges(cls, n, edges, directed):
        """Build a graph from ``(src, dst, weight)`` triples.

        For undirected graphs the triples must already contain both
        directions (constructors in this module take care of that).
        """
        edges = list(edges)
        if edges:
            src = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
            dst = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
            w = np.fromiter((e[2] for e in edges), dtype=np.float64, count=len(edges))
            if src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n:
                raise DimensionMismatch("edge endpoint outside [0, n)")
        else:
            src = dst = np.empty(0, dtype=np.int64)
            w = np.empty(0, dtype=np.float64)
        adj = sparse.csr_array(
            sparse.coo_array((w, (src, dst)), shape=(n, n))
        )
        return cls(n=n, directed=directed, adjacency=adj)

    @classmethod
    def from_adjacency(cls, matrix, directed=None):
        """Wrap a dense or sparse adjacency; infer directedness if None."""
        if not sparse.issparse(matrix):
            matrix = np.asarray(matrix, dtype=np.float64)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise DimensionMismatch(
                    f"adjacency must be square, got shape {matrix.shape}"
                )
        a = sparse.csr_array(matrix, dtype=np.float64)
        if directed is None:
            directed = (a != a.T).nnz != 0
        return cls(n=a.shape[0], directed=bool(directed), adjacency=a)

    def edge_array(self):
        """All stored entries as an ``(nnz, 3)`` array of (src, dst, weight)."""
        coo = self.adjacency.tocoo()
        return np.column_stack([coo.row, coo.col, coo.data])

    def out_degrees(self):
        """Weighted out-degree (row sums) of every node."""
        return np.asarray(self.adjacency.sum(axis=1)).ravel()


@dataclass(frozen=True)
class WalkProfile:
    """Hop-L walk aggregates: ``weighted_sums = A^L x`` and ``degrees = A^L 1``.

    With joint rescaling enabled both arrays are scaled by a common positive
    factor; the embedding ratio weighted_sums/degrees and the zero pattern of
    ``degrees`` are unaffected.
    """

    hop: int
    weighted_sums: np.ndarray
    degrees: np.ndarray


def _signal_array(graph, signal):
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != graph.n:
        raise DimensionMismatch(
            f"signal length {x.shape} does not match node count {graph.n}"
        )
    if not np.all(np.isfinite(x)):
        raise InvalidParameter("signal values must be finite")
    return x


def build_path(n, directed=True):
    """Path graph 0-1-...-(n-1); directed edges run i -> i+1, weight 1."""
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidSize(f"path needs n >= 2 nodes, got {n!r}")
    i = np.arange(n - 1)
    edges = list(zip(i, i + 1, np.ones(n - 1)))
    if not directed:
        edges += list(zip(i + 1, i, np.ones(n - 1)))
    return Graph.from_edges(int(n), edges, directed=bool(directed))


def build_grid8(rows, cols, orientation="forward"):
    """8-neighbour pixel grid in row-major node order.

    orientation="symmetric" links every pixel both ways to its Moore
    neighbours; orientation="forward" keeps only edges to lexicographically
    greater pixels (at most 4 out-edges per pixel), giving an acyclic
    directed grid.
    """
    if rows < 2 or cols < 2:
        raise InvalidSize(f"grid needs rows, cols >= 2, got {rows}x{cols}")
    if orientation == "forward":
        offsets, directed = _FORWARD_OFFSETS, True
    elif orientation == "symmetric":
        offsets, directed = _ALL_OFFSETS, False
    else:
        raise InvalidParameter(
            f"orientation must be 'forward' or 'symmetric', got {orientation!r}"
        )
    ii, jj = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    srcs, dsts = [], []
    for di, dj in offsets:
        oi, oj = ii + di, jj + dj
        ok = (oi >= 0) & (oi < rows) & (oj >= 0) & (oj < cols)
        srcs.append(ii[ok] * cols + jj[ok])
        dsts.append(oi[ok] * cols + oj[ok])
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    n = int(rows) * int(cols)
    adj = sparse.csr_array(
        sparse.coo_array((np.ones(src.size), (src, dst)), shape=(n, n))
    )
    return Graph(n=n, directed=directed, adjacency=adj)


def build_lane_topology(lanes, markers, directed=True):
    """Multi-lane corridor of sensors: ``lanes`` parallel chains of ``markers``.

    Node ``lane * markers + marker``. Adjacent sensors within a lane are
    always linked both ways; every sensor of lane l is linked to every sensor
    of lane l+1 (one way in directed mode, both ways otherwise).
    """
    if lanes < 1 or markers < 2:
        raise InvalidSize(
            f"lane topology needs lanes >= 1 and markers >= 2, got {lanes}, {markers}"
        )
    edges = []
    for lane in range(lanes):
        base = lane * markers
        for k in range(markers - 1):
            edges.append((base + k, base + k + 1, 1.0))
            edges.append((base + k + 1, base + k, 1.0))
    for lane in range(lanes - 1):
        for a in range(markers):
            for b in range(markers):
                u = lane * markers + a
                v = (lane + 1) * markers + b
                edges.append((u, v, 1.0))
                if not directed:
                    edges.append((v, u, 1.0))
    return Graph.from_edges(int(lanes) * int(markers), edges, directed=bool(directed))


def walk_profiles(graph, signal, max_hop, rescale=False):
    """Hop profiles ``(A^L x, A^L 1)`` for L = 1..max_hop by iterated mat-vec.

    Parameters
    ----------
    graph : Graph
    signal : array-like, length graph.n
    max_hop : int
        Deepest hop to propagate, at least 1.
    rescale : bool
        Jointly rescale sums and degrees each hop to dodge overflow on
        heavily weighted graphs; ratios are unchanged.

    Returns
    -------
    list of WalkProfile, one per hop 1..max_hop.
    """
    x = _signal_array(graph, signal)
    if max_hop < 1:
        raise InvalidParameter(f"max_hop must be >= 1, got {max_hop!r}")
    a = graph.adjacency
    u = x
    d = np.ones(graph.n)
    profiles = []
    for hop in range(1, int(max_hop) + 1):
        u = a @ u
        d = a @ d
        if rescale:
            top = max(np.abs(u).max(initial=0.0), d.max(initial=0.0))
            if top > 0:
                u = u / top
                d = d / top
        u.setflags(write=False)
        d.setflags(write=False)
        profiles.append(WalkProfile(hop=hop, weighted_sums=u, degrees=d))
    return profiles


def eligible_nodes(profiles, m, lag=1):
    """Nodes whose m-component embedding is defined at every used hop.

    A node qualifies when its walk degree is positive at each hop
    ``k * lag`` for k = 1..m-1; for m = 1 every node qualifies.

    ``profiles`` must cover hops 1..(m-1)*lag contiguously (the list
    returned by :func:`walk_profiles`).
    """
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m!r}")
    if lag < 1:
        raise InvalidParameter(f"lag must be >= 1, got {lag!r}")
    if not profiles:
        raise DimensionMismatch("need at least one walk profile to size the node set")
    needed = (m - 1) * lag
    if len(profiles) < needed:
        raise DimensionMismatch(
            f"profiles cover hops up to {len(profiles)}, need {needed}"
        )
    n = profiles[0].degrees.shape[0]
    mask = np.ones(n, dtype=bool)
    for k in range(1, m):
        prof = profiles[k * lag - 1]
        if prof.hop != k * lag:
            raise DimensionMismatch(
                f"profile at position {k * lag - 1} has hop {prof.hop}, expected {k * lag}"
            )
        mask &= prof.degrees > 0
    return np.flatnonzero(mask)


def permute(graph, signal, perm):
    """Relabel nodes: node i becomes perm[i]; adjacency and signal follow."""
    p = np.asarray(perm, dtype=np.int64)
    if p.shape != (graph.n,) or not np.array_equal(np.sort(p), np.arange(graph.n)):
        raise InvalidPermutation("perm must be a bijection on [0, n)")
    x = _signal_array(graph, signal)
    coo = graph.adjacency.tocoo()
    adj = sparse.csr_array(
        sparse.coo_array((coo.data, (p[coo.row], p[coo.col])), shape=(graph.n, graph.n))
    )
    new_x = np.empty_like(x)
    new_x[p] = x
    return Graph(n=graph.n, directed=graph.directed, adjacency=adj), new_x
