"""Command-line surface: compute, series, image, synth, sweep, bench.

Exit codes: 0 success; 2 when the entropy of a valid input is undefined
(NoMatches and friends; the error name and available raw sums are still
printed on stdout); 1 for usage, parse, and format errors. Machine-readable
output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import metadata

import numpy as np

from . import io as gio
from .entropy import SampEnParams, sampen_classic, sampen_graph
from .errors import EntropyUndefined, GraphSampEnError, InvalidParameter
from .experiments import SweepSpec, run_benchmark, run_sweep, write_results
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

__all__ = ["main", "console_main"]

_RESULT_FIELDS = ("value", "a", "b", "n_templates_m", "n_templates_m1", "epsilon")


def _version():
    try:
        return metadata.version("graphsampen")
    except metadata.PackageNotFoundError:
        return "0.0.0+unpackaged"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are exit code 1 in this tool, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _csv_list(conv):
    def parse(text):
        return [conv(tok) for tok in text.split(",") if tok.strip()]
    return parse


def _params_from_args(args, m=None, r=None):
    return SampEnParams(
        m=args.m if m is None else m,
        r=args.r if r is None else r,
        lag=getattr(args, "lag", 1),
        mode=getattr(args, "mode", "literal"),
        sd_convention=getattr(args, "sd", "population"),
    )


def _result_dict(res):
    return {
        "value": res.value,
        "a": res.a,
        "b": res.b,
        "n_templates_m": res.n_templates_m,
        "n_templates_m1": res.n_templates_m1,
        "epsilon": res.epsilon,
    }


def _error_dict(exc):
    out = {"error": type(exc).__name__}
    for key in ("b", "epsilon", "n_templates_m", "n_templates_m1"):
        val = getattr(exc, key, None)
        if val is not None:
            out[key] = val
    return out


def _print_rows(rows, fmt, columns):
    if fmt == "json":
        doc = rows[0] if len(rows) == 1 else rows
        print(json.dumps(doc))
        return
    print(",".join(columns))
    for row in rows:
        print(",".join(_csv_cell(row.get(c)) for c in columns))


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def cmd_compute(args):
    directed = None if args.directed is None else args.directed == "true"
    graph = gio.read_edge_list(args.graph, directed=directed)
    signal = gio.read_signal(args.signal)
    try:
        res = sampen_graph(graph, signal, _params_from_args(args))
    except EntropyUndefined as exc:
        _print_rows([_error_dict(exc)], args.format,
                    ("error", *_RESULT_FIELDS[1:]))
        return 2
    _print_rows([_result_dict(res)], args.format, _RESULT_FIELDS)
    return 0


def cmd_series(args):
    series = gio.read_series(args.input)
    try:
        res = sampen_classic(series, m=args.m, r=args.r, sd_convention=args.sd)
    except EntropyUndefined as exc:
        _print_rows([_error_dict(exc)], args.format,
                    ("error", *_RESULT_FIELDS[1:]))
        return 2
    _print_rows([_result_dict(res)], args.format, _RESULT_FIELDS)
    return 0


def cmd_image(args):
    image = gio.read_image(args.input)
    params = _params_from_args(args)
    patches = [image] if args.patch is None else gio.split_patches(image, args.patch)
    rows = []
    values = []
    for idx, patch in enumerate(patches):
        graph, signal = gio.image_to_grid_signal(patch, args.orientation)
        try:
            res = sampen_graph(graph, signal, params)
            row = {"patch": idx, **_result_dict(res), "error": None}
            values.append(res.value)
        except EntropyUndefined as exc:
            row = {"patch": idx, "value": None, **{k: _error_dict(exc).get(k)
                   for k in _RESULT_FIELDS[1:]}, "error": type(exc).__name__}
        rows.append(row)
    columns = ("patch", *_RESULT_FIELDS, "error")
    if args.patch is None:
        single = dict(rows[0])
        single.pop("patch")
        if single["error"]:
            _print_rows([{k: v for k, v in single.items() if v is not None}],
                        args.format, ("error", *_RESULT_FIELDS[1:]))
            return 2
        single.pop("error")
        _print_rows([single], args.format, _RESULT_FIELDS)
        return 0
    rows.append({"patch": "mean",
                 "value": float(np.mean(values)) if values else None,
                 "error": None})
    _print_rows(rows, args.format, columns)
    return 0 if values else 2


def cmd_synth(args):
    target = sys.stdout if args.out is None else args.out
    kind = args.generator
    if kind == "logistic":
        x0 = args.x0
        if x0 is None:
            rng = np.random.default_rng(args.seed)
            x0 = rng.uniform(0.0, 1.0)
            while not 0.0 < x0 < 1.0:
                x0 = rng.uniform(0.0, 1.0)
        gio.write_series(logistic_map(args.rho, x0, args.n, args.burn_in), target)
    elif kind == "mix2d":
        gio.write_image(mix2d(args.rows, args.cols, args.p, seed=args.seed), target)
    elif kind == "er":
        if args.p is None and args.K is None:
            raise InvalidParameter("er generator needs --p or --K")
        p = args.p if args.p is not None else er_p_for_degree(args.K, args.N)
        graph = er_graph(args.N, p, directed=not args.undirected, seed=args.seed)
        gio.write_edge_list(graph, target)
    elif kind == "ws":
        gio.write_edge_list(ws_graph(args.N, args.K, args.beta, seed=args.seed), target)
    elif kind == "uniform":
        gio.write_signal(uniform_signal(args.n, args.lo, args.hi, seed=args.seed), target)
    elif kind == "piecewise":
        gio.write_signal(piecewise_signal(args.n, sigma=args.sigma, seed=args.seed), target)
    else:  # smooth-wgn
        graph = gio.read_edge_list(args.graph, directed=False)
        gio.write_signal(
            smooth_wgn(graph, tau0=args.tau0, iters=args.iters, seed=args.seed), target)
    return 0


def _grid_from_args(args, names):
    grid = {}
    for name in names:
        value = getattr(args, name.replace("-", "_"), None)
        if value is not None:
            grid[name] = value
    return grid


def cmd_sweep(args):
    axis_names = {
        "logistic": ("rho", "n", "burn_in", "orientation", "m", "r"),
        "mix2d": ("size", "p", "orientation", "m", "r"),
        "er": ("N", "K", "m", "r"),
        "ws": ("N", "K", "beta", "signal", "m", "r"),
    }[args.family]
    grid = _grid_from_args(args, axis_names)
    spec = SweepSpec(
        family=args.family,
        grid=grid,
        reps=args.reps,
        base_seed=args.seed,
        params=SampEnParams(lag=args.lag, mode=args.mode, sd_convention=args.sd),
    )
    rows = run_sweep(spec)
    target = sys.stdout if args.out is None else args.out
    write_results(rows, target, format=args.format, base_seed=args.seed)
    return 0


def cmd_bench(args):
    rows = run_benchmark(args.N, args.K, args.m, reps=args.reps,
                         base_seed=args.seed, r=args.r)
    target = sys.stdout if args.out is None else args.out
    write_results(rows, target, format=args.format, base_seed=args.seed)
    return 0


def _add_entropy_flags(p, lag=True, mode=True):
    p.add_argument("--m", type=int, default=2, help="embedding dimension (default 2)")
    p.add_argument("--r", type=float, default=0.2, help="tolerance factor (default 0.2)")
    if lag:
        p.add_argument("--lag", type=int, default=1, help="hop step (default 1)")
    if mode:
        p.add_argument("--mode", choices=("literal", "strict"), default="literal",
                       help="template-set convention (default literal)")
    p.add_argument("--sd", choices=("population", "sample"), default="population",
                   help="standard-deviation convention (default population)")


def _add_format_flag(p, default="json"):
    p.add_argument("--format", choices=("json", "csv"), default=default,
                   help=f"output format (default {default})")


def build_parser():
    parser = _Parser(prog="graphsampen",
                     description="Sample entropy for signals on graphs.")
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="entropy of a graph signal",
                       description="Sample entropy of a node-signal file on a graph.")
    p.add_argument("--graph", required=True, help="edge-list CSV")
    p.add_argument("--signal", required=True, help="node,value CSV")
    p.add_argument("--directed", choices=("true", "false"), default=None,
                   help="override the file's directed pragma")
    _add_entropy_flags(p)
    _add_format_flag(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("series", help="classical entropy of a 1-D series",
                       description="Classical sample entropy of a series file "
                                   "(one value per line).")
    p.add_argument("--input", required=True)
    _add_entropy_flags(p, lag=False, mode=False)
    _add_format_flag(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("image", help="entropy of an image on the pixel grid",
                       description="Entropy of an image (PGM or CSV matrix) as a "
                                   "signal on its 8-neighbour pixel grid.")
    p.add_argument("--input", required=True)
    p.add_argument("--patch", type=int, default=None,
                   help="tile into SIZE x SIZE patches; one row per patch plus the mean")
    p.add_argument("--orientation", choices=("forward", "symmetric"), default="forward")
    _add_entropy_flags(p)
    _add_format_flag(p)
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("synth", help="generate synthetic data",
                       description="Deterministic seeded generators; output goes "
                                   "to stdout or --out.")
    gsub = p.add_subparsers(dest="generator", required=True)

    g = gsub.add_parser("logistic", help="logistic-map series")
    g.add_argument("--rho", type=float, required=True)
    g.add_argument("--x0", type=float, default=None,
                   help="initial condition; drawn from the seed if omitted")
    g.add_argument("--n", type=int, default=1000)
    g.add_argument("--burn-in", type=int, default=0, dest="burn_in")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_synth)

    g = gsub.add_parser("mix2d", help="periodic image with replacement noise")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_synth)

    g = gsub.add_parser("er", help="Erdos-Renyi random graph")
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--p", type=float, default=None, help="edge probability")
    g.add_argument("--K", type=float, default=None,
                   help="target mean out-degree (alternative to --p)")
    g.add_argument("--undirected", action="store_true")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_synth)

    g = gsub.add_parser("ws", help="Watts-Strogatz small-world graph")
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--K", type=int, required=True, help="ring neighbours per side")
    g.add_argument("--beta", type=float, required=True)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_synth)

    g = gsub.add_parser("uniform", help="i.i.d. uniform node signal")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--lo", type=float, default=0.01)
    g.add_argument("--hi", type=float, default=0.10)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_synth)

    g = gsub.add_parser("piecewise", help="blockwise +-1 ring signal plus noise")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--sigma", type=float, default=0.1)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_synth)

    g = gsub.add_parser("smooth-wgn", help="heat-smoothed Gaussian noise on a graph")
    g.add_argument("--graph", required=True, help="undirected edge-list CSV")
    g.add_argument("--tau0", type=float, default=0.3)
    g.add_argument("--iters", type=int, default=30)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_synth)

    p = sub.add_parser("sweep", help="seeded parameter sweep",
                       description="Repetition-averaged entropy over a parameter "
                                   "grid; comma-separated value lists per axis.")
    p.add_argument("--family", choices=("logistic", "mix2d", "er", "ws"), required=True)
    p.add_argument("--rho", type=_csv_list(float))
    p.add_argument("--n", type=_csv_list(int), help="series length (logistic)")
    p.add_argument("--burn-in", type=_csv_list(int), dest="burn_in")
    p.add_argument("--orientation", type=_csv_list(str))
    p.add_argument("--size", type=_csv_list(int))
    p.add_argument("--p", type=_csv_list(float))
    p.add_argument("--N", type=_csv_list(int))
    p.add_argument("--K", type=_csv_list(int))
    p.add_argument("--beta", type=_csv_list(float))
    p.add_argument("--signal", type=_csv_list(str))
    p.add_argument("--m", type=_csv_list(int))
    p.add_argument("--r", type=_csv_list(float))
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lag", type=int, default=1)
    p.add_argument("--mode", choices=("literal", "strict"), default="literal")
    p.add_argument("--sd", choices=("population", "sample"), default="population")
    _add_format_flag(p, default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="entropy-call timing on ER graphs",
                       description="Wall-clock benchmark of the entropy call; "
                                   "one row per (N, m).")
    p.add_argument("--N", type=_csv_list(int), required=True)
    p.add_argument("--K", type=_csv_list(int), required=True)
    p.add_argument("--m", type=_csv_list(int), required=True)
    p.add_argument("--r", type=float, default=0.2)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    _add_format_flag(p, default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except EntropyUndefined as exc:
        # subcommands handle this where raw sums are printable; anything
        # escaping here still carries the documented exit code
        print(json.dumps(_error_dict(exc)))
        return 2
    except GraphSampEnError as exc:
        print(f"graphsampen: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"graphsampen: error: {exc}", file=sys.stderr)
        return 1


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
