"""Seeded sweep runner and timing harness with CSV/JSON result output.

All randomness flows from a single base seed: repetition k of sweep row i
draws from ``numpy.random.default_rng((base_seed, i, k))``, so reruns are
bit-identical and repetitions are independent streams. Rows are ordered by
sorted axis name, with each axis's values sorted and de-duplicated.

Repetitions whose entropy is undefined (no matches, no extensions, too few
templates) are counted and excluded from the row statistics, never imputed.
"""

from __future__ import annotations

import itertools
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace

import numpy as np

from .entropy import SampEnParams, sampen_graph
from .errors import EntropyUndefined, InvalidParameter, WriteError
from .generators import (
    er_graph,
    er_p_for_degree,
    logistic_map,
    mix2d,
    piecewise_signal,
    smooth_wgn,
    uniform_signal,
    ws_graph,
)
from .graphs import build_grid8, build_path

__all__ = ["SweepSpec", "SweepRow", "run_sweep", "run_benchmark", "write_results"]

STAT_COLUMNS = ("mean", "std", "reps_ok", "reps_failed", "mean_runtime_ms")

# Axes each family understands; those without defaults must appear in the grid.
_FAMILY_AXES = {
    "logistic": {"rho": None, "n": 1000, "burn_in": 0, "orientation": "directed",
                 "m": None, "r": None},
    "mix2d": {"size": None, "p": None, "orientation": "forward", "m": None, "r": None},
    "er": {"N": None, "K": None, "m": None, "r": None},
    "ws": {"N": None, "K": None, "beta": None, "signal": "piecewise", "sigma": 0.1,
           "tau0": 0.3, "iters": 30, "m": None, "r": None},
}
_REQUIRED = {
    "logistic": {"rho"},
    "mix2d": {"size", "p"},
    "er": {"N", "K"},
    "ws": {"N", "K", "beta"},
}


@dataclass(frozen=True)
class SweepSpec:
    """A parameter grid to evaluate with repetitions.

    ``grid`` maps axis names to value lists; unknown axes for the family are
    rejected. ``params`` supplies the estimator defaults; grid axes ``m`` and
    ``r`` override them per row. Family "custom" calls ``make_case(point,
    rng) -> (graph, signal)`` instead of a built-in generator.
    """

    family: str
    grid: dict
    reps: int = 20
    base_seed: int = 0
    params: SampEnParams = field(default_factory=SampEnParams)
    make_case: object = None

    def __post_init__(self):
        if self.family not in (*_FAMILY_AXES, "custom"):
            raise InvalidParameter(f"unknown family {self.family!r}")
        if not isinstance(self.reps, (int, np.integer)) or self.reps < 1:
            raise InvalidParameter(f"reps must be an integer >= 1, got {self.reps!r}")
        if not self.grid:
            raise InvalidParameter("grid must name at least one axis")
        if any(len(v) == 0 for v in self.grid.values()):
            raise InvalidParameter("every grid axis needs at least one value")
        if self.family == "custom":
            if not callable(self.make_case):
                raise InvalidParameter("custom family requires a make_case callable")
            return
        known = _FAMILY_AXES[self.family]
        unknown = set(self.grid) - set(known)
        if unknown:
            raise InvalidParameter(
                f"axes {sorted(unknown)} not recognised by family {self.family!r}"
            )
        missing = _REQUIRED[self.family] - set(self.grid)
        if missing:
            raise InvalidParameter(
                f"family {self.family!r} requires axes {sorted(missing)}"
            )


@dataclass(frozen=True)
class SweepRow:
    """Per-grid-point statistics over repetitions.

    ``mean``/``std`` are over the successful repetitions only (sample std,
    0.0 for a single success, None when every repetition failed).
    """

    point: dict
    mean: float | None
    std: float | None
    reps_ok: int
    reps_failed: int
    mean_runtime_ms: float

    def to_dict(self):
        out = {k: _plain(v) for k, v in self.point.items()}
        out["mean"] = _plain(self.mean)
        out["std"] = _plain(self.std)
        out["reps_ok"] = int(self.reps_ok)
        out["reps_failed"] = int(self.reps_failed)
        out["mean_runtime_ms"] = float(self.mean_runtime_ms)
        return out


def _plain(v):
    if v is None or isinstance(v, (str, bool)):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def _uniform_x0(rng):
    x0 = rng.uniform(0.0, 1.0)
    while not 0.0 < x0 < 1.0:
        x0 = rng.uniform(0.0, 1.0)
    return x0


def _make_case(spec, point, rng, cache):
    """Build (graph, signal) for one repetition; rng drives all randomness."""
    if spec.family == "custom":
        return spec.make_case(point, rng)
    p = {**{k: d for k, d in _FAMILY_AXES[spec.family].items() if d is not None},
         **point}
    if spec.family == "logistic":
        key = ("path", p["n"], p["orientation"])
        if key not in cache:
            cache[key] = build_path(p["n"], directed=p["orientation"] == "directed")
        series = logistic_map(p["rho"], _uniform_x0(rng), p["n"], p["burn_in"])
        return cache[key], series
    if spec.family == "mix2d":
        key = ("grid", p["size"], p["orientation"])
        if key not in cache:
            cache[key] = build_grid8(p["size"], p["size"], p["orientation"])
        image = mix2d(p["size"], p["size"], p["p"], rng)
        return cache[key], image.ravel()
    if spec.family == "er":
        graph = er_graph(p["N"], er_p_for_degree(p["K"], p["N"]), directed=True,
                         seed=rng)
        return graph, uniform_signal(p["N"], 0.01, 0.10, seed=rng)
    # ws
    graph = ws_graph(p["N"], p["K"], p["beta"], seed=rng)
    if p["signal"] == "piecewise":
        signal = piecewise_signal(p["N"], sigma=p["sigma"], seed=rng)
    elif p["signal"] == "smooth_wgn":
        signal = smooth_wgn(graph, tau0=p["tau0"], iters=p["iters"], seed=rng)
    else:
        raise InvalidParameter(
            f"ws signal must be 'piecewise' or 'smooth_wgn', got {p['signal']!r}"
        )
    return graph, signal


def _row_params(spec, point):
    overrides = {k: point[k] for k in ("m", "r") if k in point}
    return replace(spec.params, **overrides) if overrides else spec.params


def _run_point(spec, row_idx, point, cache):
    params = _row_params(spec, point)
    values = []
    durations = []
    failed = 0
    for k in range(spec.reps):
        rng = np.random.default_rng((spec.base_seed, row_idx, k))
        graph, signal = _make_case(spec, point, rng, cache)
        t0 = time.perf_counter()
        try:
            values.append(sampen_graph(graph, signal, params).value)
        except EntropyUndefined:
            failed += 1
        durations.append(time.perf_counter() - t0)
    values.sort()  # order-independent statistics
    if values:
        mean = float(np.mean(values))
        std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
    else:
        mean = std = None
    return SweepRow(
        point=dict(point),
        mean=mean,
        std=std,
        reps_ok=len(values),
        reps_failed=failed,
        mean_runtime_ms=float(np.mean(durations) * 1e3),
    )


def _axis_values(values):
    out = sorted(set(values))
    return out


def run_sweep(spec):
    """Evaluate the Cartesian product of the grid; one SweepRow per point."""
    axes = sorted(spec.grid)
    value_lists = [_axis_values(spec.grid[a]) for a in axes]
    cache = {}
    rows = []
    for row_idx, combo in enumerate(itertools.product(*value_lists)):
        rows.append(_run_point(spec, row_idx, dict(zip(axes, combo)), cache))
    return rows


def run_benchmark(n_list, k_list, m_list, reps=20, base_seed=0, r=0.2):
    """Wall-clock timing of the entropy call on directed ER graphs.

    One row per (N, m), averaged over the target degrees in ``k_list`` and
    ``reps`` repetitions, generation excluded from the timed region. Failed
    repetitions still contribute their wall time.
    """
    if reps < 1:
        raise InvalidParameter(f"reps must be >= 1, got {reps!r}")
    rows = []
    row_idx = 0
    for n in sorted(set(n_list)):
        for m in sorted(set(m_list)):
            params = SampEnParams(m=m, r=r)
            values = []
            durations = []
            failed = 0
            case = 0
            for degree in sorted(set(k_list)):
                for _ in range(reps):
                    rng = np.random.default_rng((base_seed, row_idx, case))
                    case += 1
                    graph = er_graph(n, er_p_for_degree(degree, n), directed=True,
                                     seed=rng)
                    signal = uniform_signal(n, 0.01, 0.10, seed=rng)
                    t0 = time.perf_counter()
                    try:
                        values.append(sampen_graph(graph, signal, params).value)
                    except EntropyUndefined:
                        failed += 1
                    durations.append(time.perf_counter() - t0)
            values.sort()
            if values:
                mean = float(np.mean(values))
                std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
            else:
                mean = std = None
            rows.append(SweepRow(
                point={"N": int(n), "m": int(m)},
                mean=mean,
                std=std,
                reps_ok=len(values),
                reps_failed=failed,
                mean_runtime_ms=float(np.mean(durations) * 1e3),
            ))
            row_idx += 1
    return rows


@contextmanager
def _writable(target):
    if hasattr(target, "write"):
        yield target
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def write_results(rows, target, format="csv", base_seed=None):
    """Serialise sweep/benchmark rows to CSV or JSON.

    CSV: optional ``# base_seed=...`` comment, header of axis names followed
    by the statistics columns, numbers at 17 significant digits. JSON: an
    object ``{"base_seed": ..., "rows": [...]}`` whose rows mirror the CSV
    columns.
    """
    if format not in ("csv", "json"):
        raise InvalidParameter(f"format must be 'csv' or 'json', got {format!r}")
    dicts = [r.to_dict() if isinstance(r, SweepRow) else dict(r) for r in rows]
    axis_names = [k for k in dicts[0] if k not in STAT_COLUMNS] if dicts else []
    try:
        with _writable(target) as fh:
            if format == "json":
                json.dump(
                    {"base_seed": None if base_seed is None else int(base_seed),
                     "rows": dicts},
                    fh, indent=2)
                fh.write("\n")
                return
            if base_seed is not None:
                fh.write(f"# base_seed={int(base_seed)}\n")
            header = [*axis_names, *STAT_COLUMNS]
            fh.write(",".join(header) + "\n")
            for d in dicts:
                fh.write(",".join(_cell(d.get(k)) for k in header) + "\n")
    except OSError as exc:
        raise WriteError(f"could not write results: {exc}") from exc
