"""Seeded generators for synthetic signals, images, and random graphs.

Every generator is a pure function of its parameters and ``seed``; the same
seed gives bit-identical output. Seeds are anything numpy's SeedSequence
accepts (typically a 64-bit integer, or a tuple for derived streams such as
``(base_seed, row, repetition)``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import DegenerateDegree, InvalidParameter
from .graphs import Graph, _signal_array

__all__ = [
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
]


@dataclass(frozen=True)
class Image:
    """A rectangular field of finite real pixels, row-major."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.float64)
        if p.ndim != 2 or p.size == 0:
            raise InvalidParameter(f"pixels must be a non-empty 2-D array, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise InvalidParameter("pixels must be finite")
        object.__setattr__(self, "pixels", p)

    @property
    def rows(self):
        return self.pixels.shape[0]

    @property
    def cols(self):
        return self.pixels.shape[1]

    def ravel(self):
        """Row-major pixel vector (the grid-signal order)."""
        return self.pixels.ravel()


def logistic_map(rho, x0, n, burn_in=0):
    """Iterate ``x <- rho * x * (1 - x)``; drop burn_in samples, return n."""
    if not 0 < rho <= 4:
        raise InvalidParameter(f"rho must be in (0, 4], got {rho!r}")
    if not 0 < x0 < 1:
        raise InvalidParameter(f"x0 must be in (0, 1), got {x0!r}")
    if n < 1 or burn_in < 0:
        raise InvalidParameter("need n >= 1 and burn_in >= 0")
    x = float(x0)
    for _ in range(int(burn_in)):
        x = rho * x * (1.0 - x)
    out = np.empty(int(n))
    for t in range(int(n)):
        out[t] = x
        x = rho * x * (1.0 - x)
    return out


def mix2d(rows, cols, p, seed=None):
    """Doubly periodic sine image with pixels replaced by noise w.p. ``p``.

    The clean field is ``sin(2 pi i / 12) + sin(2 pi j / 12)``; each pixel is
    independently replaced (probability p) by Uniform(-sqrt(3), sqrt(3))
    noise, which has unit variance.
    """
    if not 0 <= p <= 1:
        raise InvalidParameter(f"p must be in [0, 1], got {p!r}")
    if rows < 1 or cols < 1:
        raise InvalidParameter("rows and cols must be >= 1")
    rng = np.random.default_rng(seed)
    i = np.arange(rows)[:, None]
    j = np.arange(cols)[None, :]
    clean = np.sin(2 * np.pi * i / 12) + np.sin(2 * np.pi * j / 12)
    mask = rng.random((rows, cols)) < p
    noise = rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), (rows, cols))
    return Image(np.where(mask, noise, np.broadcast_to(clean, (rows, cols))))


def er_p_for_degree(target_degree, n):
    """Edge probability giving mean out-degree ``target_degree`` on n nodes."""
    if n < 2:
        raise InvalidParameter(f"need n >= 2, got {n!r}")
    if not 0 <= target_degree <= n - 1:
        raise InvalidParameter(
            f"target degree must be in [0, n-1] = [0, {n - 1}], got {target_degree!r}"
        )
    return target_degree / (n - 1)


def er_graph(n, p, directed=True, seed=None):
    """Erdos-Renyi graph: each (ordered) pair gets an edge with probability p."""
    if n < 2:
        raise InvalidParameter(f"need n >= 2, got {n!r}")
    if not 0 <= p <= 1:
        raise InvalidParameter(f"p must be in [0, 1], got {p!r}")
    rng = np.random.default_rng(seed)
    draws = rng.random((n, n))
    if directed:
        mask = draws < p
        np.fill_diagonal(mask, False)
    else:
        upper = np.triu(draws < p, k=1)
        mask = upper | upper.T
    adj = sparse.csr_array(sparse.coo_array(mask.astype(np.float64)))
    return Graph(n=int(n), directed=bool(directed), adjacency=adj)


def ws_graph(n, k, beta, seed=None):
    """Watts-Strogatz small world: 2k-regular ring with per-edge rewiring.

    Each lattice edge (i, i+offset) is rewired with probability beta to
    (i, w) for a uniformly random w, resampling w on self-loops and
    duplicates. Undirected, unweighted; edge count is always n*k.
    """
    if k < 1 or n <= 2 * k:
        raise InvalidParameter(f"need n > 2k >= 2, got n={n!r}, k={k!r}")
    if not 0 <= beta <= 1:
        raise InvalidParameter(f"beta must be in [0, 1], got {beta!r}")
    rng = np.random.default_rng(seed)
    neighbours = [set() for _ in range(n)]
    edges = []
    for offset in range(1, k + 1):
        for i in range(n):
            j = (i + offset) % n
            edges.append((i, j))
            neighbours[i].add(j)
            neighbours[j].add(i)
    for idx, (i, j) in enumerate(edges):
        if rng.random() >= beta:
            continue
        if len(neighbours[i]) >= n - 1:
            continue  # i already touches every other node; keep the edge
        w = int(rng.integers(n))
        while w == i or w in neighbours[i]:
            w = int(rng.integers(n))
        neighbours[i].discard(j)
        neighbours[j].discard(i)
        neighbours[i].add(w)
        neighbours[w].add(i)
        edges[idx] = (i, w)
    triples = [(i, j, 1.0) for i, j in edges] + [(j, i, 1.0) for i, j in edges]
    return Graph.from_edges(int(n), triples, directed=False)


def heat_smooth(graph, values, tau0=0.3, iters=30):
    """Low-pass filter a signal by iterating ``s <- s - alpha * L_norm s``.

    ``L_norm = I - D^(-1/2) A D^(-1/2)`` is the normalised Laplacian and
    ``alpha = tau0 / iters``, approximating heat diffusion for time tau0.
    """
    if graph.directed:
        raise InvalidParameter("heat smoothing is defined on undirected graphs")
    if iters < 1 or not tau0 > 0:
        raise InvalidParameter("need iters >= 1 and tau0 > 0")
    s = _signal_array(graph, values).copy()
    deg = graph.out_degrees()
    if np.any(deg == 0):
        raise DegenerateDegree("graph has isolated nodes; normalised Laplacian undefined")
    inv_sqrt = 1.0 / np.sqrt(deg)
    alpha = tau0 / iters
    a = graph.adjacency
    for _ in range(int(iters)):
        s = s - alpha * (s - inv_sqrt * (a @ (inv_sqrt * s)))
    return s


def smooth_wgn(graph, tau0=0.3, iters=30, seed=None):
    """Standard-normal node noise smoothed by :func:`heat_smooth`."""
    rng = np.random.default_rng(seed)
    return heat_smooth(graph, rng.standard_normal(graph.n), tau0=tau0, iters=iters)


def piecewise_signal(n, sigma=0.1, seed=None):
    """Ring split into 4 blocks of alternating +1/-1, plus Gaussian noise.

    Blocks 1-3 have length floor(n/4); block 4 takes the remainder.
    """
    if n < 8:
        raise InvalidParameter(f"need n >= 8, got {n!r}")
    if sigma < 0:
        raise InvalidParameter(f"sigma must be >= 0, got {sigma!r}")
    k = n // 4
    x = np.empty(int(n))
    x[:k] = 1.0
    x[k:2 * k] = -1.0
    x[2 * k:3 * k] = 1.0
    x[3 * k:] = -1.0
    if sigma > 0:
        x += sigma * np.random.default_rng(seed).standard_normal(int(n))
    return x


def uniform_signal(n, lo=0.01, hi=0.10, seed=None):
    """I.i.d. Uniform(lo, hi) node values."""
    if not lo < hi:
        raise InvalidParameter(f"need lo < hi, got {lo!r} >= {hi!r}")
    if n < 1:
        raise InvalidParameter(f"need n >= 1, got {n!r}")
    return np.random.default_rng(seed).uniform(lo, hi, int(n))
