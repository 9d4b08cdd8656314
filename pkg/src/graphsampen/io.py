"""File formats and preprocessing for feeding real data into the estimator.

Canonical exchange formats (UTF-8, LF, comma-separated):

* edge list  - optional first line ``# directed=true|false``, header
  ``src,dst,weight`` (weight column optional, default 1.0), one edge per row,
  0-based integer node ids, positive weights.
* node signal - header ``node,value``, node ids exactly 0..n-1.
* images      - PGM (P2 ascii or P5 binary, maxval <= 65535) or a headerless
  comma-separated matrix.
* time series - header ``sensor,epoch_seconds,value`` with integer-second
  timestamps; irregular sampling allowed.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoverageError,
    EmptyGraph,
    FormatError,
    InvalidParameter,
    ParseError,
)
from .generators import Image
from .graphs import Graph, build_grid8

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "read_signal",
    "write_signal",
    "read_series",
    "write_series",
    "read_image",
    "write_image",
    "image_to_grid_signal",
    "split_patches",
    "gaussian_kernel_graph",
    "TimeSeriesTable",
    "read_time_series",
    "resample_series",
    "select_sensors",
]

_PRAGMA = "# directed="


def _fmt(x):
    """17 significant digits: round-trips IEEE doubles through text."""
    return format(float(x), ".17g")


@contextmanager
def _writable(target):
    if hasattr(target, "write"):
        yield target
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def read_edge_list(path, directed=None):
    """Parse an edge-list CSV into a Graph.

    Directedness comes from the ``directed`` argument if given, else from
    the ``# directed=...`` pragma line; lacking both is a FormatError.
    Undirected inputs may list each edge in one or both directions; both
    directions must agree on the weight.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    lineno = 0
    pragma = None
    if lines and lines[0].lstrip().startswith("#"):
        lineno = 1
        text = lines[0].strip()
        if text.startswith(_PRAGMA):
            flag = text[len(_PRAGMA):].strip().lower()
            if flag not in ("true", "false"):
                raise ParseError(f"bad pragma value {flag!r}", line=1)
            pragma = flag == "true"
    if directed is None:
        directed = pragma
    if directed is None:
        raise FormatError(
            f"{path}: directedness not given and no '# directed=' pragma present"
        )
    if lineno >= len(lines):
        raise FormatError(f"{path}: missing header line")
    header = [c.strip() for c in lines[lineno].split(",")]
    if header not in (["src", "dst", "weight"], ["src", "dst"]):
        raise ParseError(
            f"header must be 'src,dst[,weight]', got {lines[lineno]!r}",
            line=lineno + 1,
        )
    has_weight = len(header) == 3
    seen = {}
    for off, raw in enumerate(lines[lineno + 1:], start=lineno + 2):
        if not raw.strip():
            continue
        cells = [c.strip() for c in raw.split(",")]
        if len(cells) != len(header):
            raise ParseError(f"expected {len(header)} columns, got {len(cells)}", line=off)
        try:
            src = int(cells[0])
            dst = int(cells[1])
            w = float(cells[2]) if has_weight else 1.0
        except ValueError as exc:
            raise ParseError(str(exc), line=off) from None
        if src < 0 or dst < 0:
            raise ParseError("node ids must be >= 0", line=off)
        if not (math.isfinite(w) and w > 0):
            raise ParseError(f"weight must be finite and > 0, got {w!r}", line=off)
        if (src, dst) in seen:
            raise FormatError(f"{path}: duplicate edge row ({src},{dst})")
        seen[(src, dst)] = w
    if not seen:
        raise FormatError(f"{path}: no edges")
    n = max(max(i, j) for i, j in seen) + 1
    if directed:
        edges = [(i, j, w) for (i, j), w in seen.items()]
    else:
        merged = {}
        for (i, j), w in seen.items():
            key = (min(i, j), max(i, j))
            if key in merged and merged[key] != w:
                raise FormatError(
                    f"{path}: edge {key} listed with inconsistent weights "
                    f"{merged[key]!r} and {w!r}"
                )
            merged[key] = w
        edges = []
        for (i, j), w in merged.items():
            edges.append((i, j, w))
            if i != j:
                edges.append((j, i, w))
    return Graph.from_edges(n, edges, directed=bool(directed))


def write_edge_list(graph, path):
    """Inverse of :func:`read_edge_list`; undirected edges written once."""
    coo = graph.adjacency.tocoo()
    with _writable(path) as fh:
        fh.write(f"{_PRAGMA}{'true' if graph.directed else 'false'}\n")
        fh.write("src,dst,weight\n")
        for i, j, w in sorted(zip(coo.row, coo.col, coo.data), key=lambda e: (e[0], e[1])):
            if not graph.directed and j < i:
                continue
            fh.write(f"{int(i)},{int(j)},{_fmt(w)}\n")


def read_signal(path):
    """Parse a ``node,value`` CSV; node ids must be exactly 0..n-1."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or [c.strip() for c in lines[0].split(",")] != ["node", "value"]:
        raise ParseError("header must be 'node,value'", line=1)
    pairs = {}
    for off, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        cells = [c.strip() for c in raw.split(",")]
        if len(cells) != 2:
            raise ParseError(f"expected 2 columns, got {len(cells)}", line=off)
        try:
            node = int(cells[0])
            value = float(cells[1])
        except ValueError as exc:
            raise ParseError(str(exc), line=off) from None
        if not math.isfinite(value):
            raise ParseError(f"value must be finite, got {value!r}", line=off)
        if node in pairs:
            raise ParseError(f"duplicate node id {node}", line=off)
        pairs[node] = value
    if not pairs:
        raise ParseError("signal file has no rows", line=len(lines))
    n = len(pairs)
    if sorted(pairs) != list(range(n)):
        raise ParseError(
            f"node ids must be exactly 0..{n - 1}", line=len(lines)
        )
    return np.array([pairs[i] for i in range(n)])


def write_signal(values, path):
    """Inverse of :func:`read_signal`."""
    values = np.asarray(values, dtype=np.float64).ravel()
    with _writable(path) as fh:
        fh.write("node,value\n")
        for i, v in enumerate(values):
            fh.write(f"{i},{_fmt(v)}\n")


def read_series(path):
    """Plain series file: one value per line, blank and '#' lines skipped."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    values = []
    for off, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            v = float(text)
        except ValueError as exc:
            raise ParseError(str(exc), line=off) from None
        if not math.isfinite(v):
            raise ParseError(f"value must be finite, got {v!r}", line=off)
        values.append(v)
    if not values:
        raise FormatError(f"{path}: series file has no values")
    return np.array(values)


def write_series(values, path):
    """Inverse of :func:`read_series`."""
    values = np.asarray(values, dtype=np.float64).ravel()
    with _writable(path) as fh:
        for v in values:
            fh.write(_fmt(v) + "\n")


def _read_pgm(data, path):
    # tokenizer skipping '#' comments, per the PGM spec
    tokens = []
    pos = 0
    while len(tokens) < 4 and pos < len(data):
        ch = data[pos:pos + 1]
        if ch == b"#":
            nl = data.find(b"\n", pos)
            pos = len(data) if nl < 0 else nl + 1
        elif ch.isspace():
            pos += 1
        else:
            end = pos
            while end < len(data) and not data[end:end + 1].isspace() and data[end:end + 1] != b"#":
                end += 1
            tokens.append(data[pos:end])
            pos = end
    if len(tokens) < 4:
        raise FormatError(f"{path}: truncated PGM header")
    magic = tokens[0].decode("ascii", "replace")
    try:
        cols, rows, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    except ValueError:
        raise FormatError(f"{path}: non-numeric PGM header") from None
    if rows < 1 or cols < 1 or not 1 <= maxval <= 65535:
        raise FormatError(f"{path}: bad PGM dimensions or maxval")
    count = rows * cols
    if magic == "P2":
        body = data[pos:].split()
        if len(body) != count:
            raise FormatError(f"{path}: expected {count} pixels, got {len(body)}")
        try:
            pix = np.array([int(tk) for tk in body], dtype=np.float64)
        except ValueError:
            raise FormatError(f"{path}: non-numeric PGM pixel") from None
    else:  # P5: header ends at exactly one whitespace byte
        raw = data[pos + 1:]
        if maxval > 255:
            if len(raw) < 2 * count:
                raise FormatError(f"{path}: truncated P5 payload")
            pix = np.frombuffer(raw[:2 * count], dtype=">u2").astype(np.float64)
        else:
            if len(raw) < count:
                raise FormatError(f"{path}: truncated P5 payload")
            pix = np.frombuffer(raw[:count], dtype=np.uint8).astype(np.float64)
    if pix.max(initial=0) > maxval:
        raise FormatError(f"{path}: pixel exceeds declared maxval")
    return Image(pix.reshape(rows, cols))


def read_image(path):
    """Read a PGM (P2/P5) or headerless CSV matrix as an Image."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] in (b"P2", b"P5"):
        return _read_pgm(data, path)
    if data[:1] == b"P":
        raise FormatError(f"{path}: unsupported magic number {data[:2]!r}")
    rows = []
    width = None
    for off, raw in enumerate(data.decode("utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        cells = raw.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"expected {width} columns, got {len(cells)}", line=off)
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise ParseError(str(exc), line=off) from None
    if not rows:
        raise FormatError(f"{path}: empty image")
    return Image(np.array(rows, dtype=np.float64))


def write_image(image, path):
    """Write an Image as a headerless CSV matrix (bit-exact round trip)."""
    with _writable(path) as fh:
        for row in image.pixels:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def image_to_grid_signal(image, orientation="forward"):
    """Pixels become the signal, row-major, on the matching 8-neighbour grid."""
    return build_grid8(image.rows, image.cols, orientation), image.ravel()


def split_patches(image, size):
    """Tile the image into non-overlapping size x size patches, row-major."""
    if size < 1 or image.rows % size or image.cols % size:
        raise InvalidParameter(
            f"patch size {size!r} must divide image dimensions "
            f"{image.rows}x{image.cols}"
        )
    out = []
    for i in range(0, image.rows, size):
        for j in range(0, image.cols, size):
            out.append(Image(image.pixels[i:i + size, j:j + size].copy()))
    return out


def gaussian_kernel_graph(coords, theta=None, cutoff=0.0):
    """Complete weighted graph from point coordinates via a Gaussian kernel.

    ``w_ij = exp(-d_ij^2 / (2 theta^2))`` for every pair with ``w_ij >=
    cutoff``. theta defaults to the mean pairwise Euclidean distance.
    """
    pts = np.asarray(coords, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] not in (2, 3):
        raise InvalidParameter(
            f"coords must be (k, 2) or (k, 3) with k >= 2, got shape {pts.shape}"
        )
    if not np.all(np.isfinite(pts)):
        raise InvalidParameter("coordinates must be finite")
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    if theta is None:
        iu = np.triu_indices(pts.shape[0], k=1)
        theta = float(dist[iu].mean())
    if not theta > 0:
        raise InvalidParameter(f"theta must be > 0, got {theta!r}")
    w = np.exp(-(dist ** 2) / (2.0 * theta * theta))
    np.fill_diagonal(w, 0.0)
    w[w < cutoff] = 0.0
    if not w.any():
        raise EmptyGraph("every pairwise weight fell below the cutoff")
    return Graph.from_adjacency(w, directed=False)


@dataclass(frozen=True)
class TimeSeriesTable:
    """Per-sensor irregular time series with strictly increasing timestamps."""

    series: dict

    @classmethod
    def from_rows(cls, rows):
        """Build from ``(sensor, epoch_seconds, value)`` triples.

        Duplicate timestamps per sensor collapse to the first occurrence.
        """
        acc = {}
        for sensor, t, v in rows:
            acc.setdefault(str(sensor), {}).setdefault(int(t), float(v))
        series = {}
        for sensor, points in acc.items():
            ts = np.array(sorted(points), dtype=np.int64)
            vs = np.array([points[t] for t in sorted(points)], dtype=np.float64)
            series[sensor] = (ts, vs)
        return cls(series=series)

    def counts(self):
        """Observation count per sensor (for coverage-based selection)."""
        return {s: len(ts) for s, (ts, _) in self.series.items()}


def read_time_series(path):
    """Parse a ``sensor,epoch_seconds,value`` CSV into a TimeSeriesTable."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or [c.strip() for c in lines[0].split(",")] != [
        "sensor", "epoch_seconds", "value",
    ]:
        raise ParseError("header must be 'sensor,epoch_seconds,value'", line=1)
    rows = []
    for off, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        cells = [c.strip() for c in raw.split(",")]
        if len(cells) != 3:
            raise ParseError(f"expected 3 columns, got {len(cells)}", line=off)
        try:
            t = int(cells[1])
            v = float(cells[2])
        except ValueError as exc:
            raise ParseError(str(exc), line=off) from None
        if not math.isfinite(v):
            raise ParseError(f"value must be finite, got {v!r}", line=off)
        rows.append((cells[0], t, v))
    return TimeSeriesTable.from_rows(rows)


def resample_series(table, interval_seconds, window):
    """Linearly resample every sensor onto a uniform grid inside ``window``.

    The grid is ``start, start+interval, ...`` up to and including ``end``
    when it lands on the grid. Every grid point must be bracketed by raw
    samples; there is no extrapolation.

    Returns ``(grid_times, {sensor: values})``.
    """
    start, end = int(window[0]), int(window[1])
    if interval_seconds < 1 or end <= start:
        raise InvalidParameter("need interval_seconds >= 1 and end > start")
    grid = np.arange(start, end + 1, int(interval_seconds), dtype=np.int64)
    out = {}
    for sensor, (ts, vs) in sorted(table.series.items()):
        if len(ts) < 2:
            raise CoverageError(
                f"sensor {sensor!r} has {len(ts)} sample(s), need >= 2",
                sensor=sensor,
            )
        if grid[0] < ts[0] or grid[-1] > ts[-1]:
            raise CoverageError(
                f"sensor {sensor!r} covers [{ts[0]}, {ts[-1]}], grid needs "
                f"[{grid[0]}, {grid[-1]}]",
                sensor=sensor,
            )
        out[sensor] = np.interp(grid, ts, vs)
    return grid, out


def select_sensors(counts, fraction):
    """Keys (or indices) whose count reaches ``fraction`` of the maximum."""
    if not 0 < fraction <= 1:
        raise InvalidParameter(f"fraction must be in (0, 1], got {fraction!r}")
    if not isinstance(counts, dict):
        counts = dict(enumerate(counts))
    if not counts:
        raise InvalidParameter("counts must be non-empty")
    top = max(counts.values())
    return sorted(k for k, c in counts.items() if c >= fraction * top)
