"""Plain-text file formats: edge lists, label files and commented CSV tables.

Graph file::

    n <n>
    <u> <v>        one line per undirected edge, u < v, ascending

Labels file: ``+1`` or ``-1``, one per line, ``n`` lines.

CSV tables start with ``#`` comment lines (tool name/version, subcommand,
full run configuration), then a header row and data rows. Floats are
written with 17 significant digits.
"""

import io

import numpy as np

from . import __version__
from .errors import ParseError
from .graph import LabeledGraph
from .rng import RNG_NAME

TOOL = "fiedler-hotspots"


def fmt_float(x):
    return format(float(x), ".17g")


def fmt_value(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return fmt_float(x)
    return str(x)


def graph_text(graph):
    lines = [f"n {graph.n}"]
    lines += [f"{u} {v}" for u, v in graph.edges().tolist()]
    return "\n".join(lines) + "\n"


def write_graph(path, graph):
    with open(path, "w", newline="\n") as fh:
        fh.write(graph_text(graph))


def parse_graph(text, path=None, labels=None):
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty graph file", path=path)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ParseError("first line must be 'n <count>'", 1, path)
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError("vertex count is not an integer", 1, path) from None
    if n < 1:
        raise ParseError("vertex count must be positive", 1, path)
    edges = []
    prev = None
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'u v'", lineno, path)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("vertex ids must be integers", lineno, path) from None
        if not 0 <= u < v:
            raise ParseError(f"need 0 <= u < v, got {u} {v}", lineno, path)
        if v >= n:
            raise ParseError(f"vertex {v} out of range for n={n}", lineno, path)
        if prev is not None and (u, v) <= prev:
            raise ParseError("edges must be unique and ascending", lineno, path)
        prev = (u, v)
        edges.append((u, v))
    return LabeledGraph.from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2), labels)


def read_graph(path, labels_path=None):
    with open(path) as fh:
        text = fh.read()
    labels = read_labels(labels_path) if labels_path is not None else None
    graph = parse_graph(text, path)
    if labels is not None:
        if labels.shape[0] != graph.n:
            raise ParseError(f"{labels.shape[0]} labels for {graph.n} vertices", path=labels_path)
        graph = graph.with_labels(labels)
    return graph


def labels_text(labels):
    return "".join("+1\n" if int(x) == 1 else "-1\n" for x in labels)


def write_labels(path, labels):
    with open(path, "w", newline="\n") as fh:
        fh.write(labels_text(labels))


def read_labels(path):
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            tok = line.strip()
            if not tok:
                continue
            if tok in ("+1", "1"):
                out.append(1)
            elif tok == "-1":
                out.append(-1)
            else:
                raise ParseError(f"label must be +1 or -1, got {tok!r}", lineno, path)
    return np.array(out, dtype=np.int8)


def header_lines(command, config, extra=()):
    lines = [f"# {TOOL} {__version__}", f"# command: {command}", f"# rng: {RNG_NAME}"]
    for key, val in config.items():
        lines.append(f"# config.{key}: {fmt_value(val) if not isinstance(val, (list, tuple)) else ','.join(map(fmt_value, val))}")
    for key, val in extra:
        lines.append(f"# {key}: {fmt_value(val)}")
    return lines


def csv_text(command, config, columns, rows, extra=()):
    buf = io.StringIO()
    for line in header_lines(command, config, extra):
        buf.write(line + "\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt_value(x) for x in row) + "\n")
    return buf.getvalue()


def read_csv_table(path):
    """Return ``(comments, columns, rows-as-strings)`` from a commented CSV."""
    comments, columns, rows = [], None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line)
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append(line.split(","))
    return comments, columns, rows
