"""Brute-force reference implementation for differential testing.

Deliberately shares no code with the fast path: dense matrix powers instead
of iterated sparse mat-vec, explicit Python pair loops instead of the
chunked kernel, and its own two-pass standard deviation. Slow on purpose;
refuses graphs beyond 2000 nodes.
"""

from __future__ import annotations

import math

import numpy as np

from .entropy import SampEnParams, SampEnResult
from .errors import (
    DimensionMismatch,
    InsufficientPatterns,
    InvalidParameter,
    NoExtendedMatches,
    NoMatches,
    OracleTooLarge,
)

__all__ = ["sampen_oracle"]

_MAX_NODES = 2000


def _two_pass_sd(values, sd_convention):
    n = len(values)
    if max(values) == min(values):
        return 0.0
    mean = sum(values) / n
    ss = sum((v - mean) ** 2 for v in values)
    if sd_convention == "sample":
        if n < 2:
            raise InvalidParameter("sample SD needs at least 2 values")
        return math.sqrt(ss / (n - 1))
    return math.sqrt(ss / n)


def _dense_powers(adj, max_hop):
    powers = []
    p = np.eye(adj.shape[0])
    for _ in range(max_hop):
        p = p @ adj
        powers.append(p)
    return powers


def _mean_count(templates, epsilon):
    t = len(templates)
    total = 0.0
    for i in range(t):
        c = 0
        for j in range(t):
            if j == i:
                continue
            d = 0.0
            for a, b in zip(templates[i], templates[j]):
                ad = abs(a - b)
                if ad > d:
                    d = ad
                if d > epsilon:
                    break
            if d <= epsilon:
                c += 1
        total += c / (t - 1)
    return total / t


def sampen_oracle(graph, signal, params=SampEnParams()):
    """Same contract as :func:`graphsampen.entropy.sampen_graph`, brute force."""
    if not isinstance(params, SampEnParams):
        raise InvalidParameter("params must be a SampEnParams instance")
    if graph.n > _MAX_NODES:
        raise OracleTooLarge(f"oracle refuses n={graph.n} > {_MAX_NODES}")
    x = np.asarray(signal, dtype=np.float64)
    if x.shape != (graph.n,):
        raise DimensionMismatch("signal length does not match node count")
    m, lag = params.m, params.lag
    adj = graph.adjacency.toarray()
    powers = _dense_powers(adj, (m + 1) * lag)
    degs = [p.sum(axis=1) for p in powers]

    def eligible(k_max):
        out = []
        for i in range(graph.n):
            if all(degs[k * lag - 1][i] > 0 for k in range(1, k_max + 1)):
                out.append(i)
        return out

    def template(i, n_comp):
        comps = [x[i]]
        for k in range(1, n_comp):
            p = powers[k * lag - 1]
            comps.append(float(p[i] @ x) / degs[k * lag - 1][i])
        return comps

    set_m1 = eligible(m + 1)
    set_m = set_m1 if params.mode == "strict" else eligible(m)
    if len(set_m1) < 2:
        raise InsufficientPatterns(
            f"only {len(set_m1)} node(s) support an (m+1)-component template",
            n_templates_m=len(set_m), n_templates_m1=len(set_m1),
        )
    epsilon = params.r * _two_pass_sd([float(v) for v in x], params.sd_convention)
    b = _mean_count([template(i, m) for i in set_m], epsilon)
    a = _mean_count([template(i, m + 1) for i in set_m1], epsilon)
    if b == 0.0:
        raise NoMatches(
            "no template pair within epsilon at dimension m",
            epsilon=epsilon, n_templates_m=len(set_m), n_templates_m1=len(set_m1),
        )
    if a == 0.0:
        raise NoExtendedMatches(
            "matches at dimension m do not extend to m+1",
            b=b, epsilon=epsilon, n_templates_m=len(set_m), n_templates_m1=len(set_m1),
        )
    return SampEnResult(
        value=-math.log(a / b), a=a, b=b,
        n_templates_m=len(set_m), n_templates_m1=len(set_m1), epsilon=epsilon,
    )
