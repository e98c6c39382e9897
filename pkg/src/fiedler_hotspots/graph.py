"""Immutable sparse symmetric graphs with optional +/-1 block labels."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DimensionError, PreconditionError, ValidationError


def _check_labels(labels, n):
    g = np.asarray(labels)
    if g.shape != (n,):
        raise DimensionError(f"labels must have shape ({n},), got {g.shape}")
    if not np.all((g == 1) | (g == -1)):
        raise ValidationError("labels must be exactly -1 or +1")
    return g.astype(np.int8)


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Unweighted undirected graph in CSR form.

    Each undirected edge ``{i, j}`` appears as ``j`` in row ``i`` and ``i`` in
    row ``j``; columns are sorted within each row. Build instances with
    :meth:`from_edges` (validating) or :meth:`from_csr`.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray | None = None

    @classmethod
    def from_csr(cls, n, indptr, indices, labels=None, *, validate=True):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int32)
        if labels is not None:
            labels = _check_labels(labels, n)
        graph = cls(int(n), indptr, indices, labels)
        if validate:
            graph.validate()
        indptr.setflags(write=False)
        indices.setflags(write=False)
        if labels is not None:
            labels.setflags(write=False)
        return graph

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        """Build from an iterable/array of ``(u, v)`` pairs.

        Duplicates and either orientation are accepted; self-loops raise.
        """
        n = int(n)
        if n < 1:
            raise ValidationError(f"n must be positive, got {n}")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValidationError(f"edge endpoint outside [0, {n})")
        if np.any(e[:, 0] == e[:, 1]):
            raise ValidationError("self-loops are not allowed")
        u = np.minimum(e[:, 0], e[:, 1])
        v = np.maximum(e[:, 0], e[:, 1])
        keys = np.unique(u * n + v)
        u, v = keys // n, keys % n
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls.from_csr(n, indptr, dst[order], labels, validate=False)

    def with_labels(self, labels):
        return LabeledGraph.from_csr(self.n, self.indptr, self.indices, labels, validate=False)

    def validate(self):
        n = self.n
        if n < 1:
            raise ValidationError(f"n must be positive, got {n}")
        if self.indptr.shape != (n + 1,) or self.indptr[0] != 0:
            raise ValidationError("malformed indptr")
        if np.any(np.diff(self.indptr) < 0) or self.indptr[-1] != self.indices.shape[0]:
            raise ValidationError("malformed indptr")
        idx = self.indices
        if idx.size and (idx.min() < 0 or idx.max() >= n):
            raise ValidationError("column index outside [0, n)")
        rows = self._rows
        if np.any(rows == idx):
            raise ValidationError("self-loops are not allowed")
        key = rows * n + idx
        if key.size > 1 and np.any(np.diff(key) <= 0):
            raise ValidationError("rows must hold strictly increasing columns")
        mirror = np.sort(idx.astype(np.int64) * n + rows)
        if not np.array_equal(mirror, key):
            raise ValidationError("adjacency is not symmetric")

    @cached_property
    def _rows(self):
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    @property
    def has_labels(self):
        return self.labels is not None

    @property
    def num_edges(self):
        return self.indices.shape[0] // 2

    @cached_property
    def degrees(self):
        return np.diff(self.indptr)

    def neighbors(self, i):
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def edges(self):
        """``(m, 2)`` array of undirected edges with ``u < v``, ascending."""
        rows = self._rows
        upper = rows < self.indices
        return np.column_stack([rows[upper], self.indices[upper].astype(np.int64)])

    def to_dense(self):
        A = np.zeros((self.n, self.n))
        A[self._rows, self.indices] = 1.0
        return A

    def permute(self, perm):
        """Relabel vertex ``perm[i]`` as ``i``."""
        perm = np.asarray(perm, dtype=np.int64)
        inverse = np.empty_like(perm)
        inverse[perm] = np.arange(self.n)
        e = inverse[self.edges()]
        labels = None if self.labels is None else self.labels[perm]
        return LabeledGraph.from_edges(self.n, e, labels)

    def require_labels(self):
        if self.labels is None:
            raise PreconditionError("graph has no ground-truth labels")
        return self.labels

    def norm1(self):
        return float(self.degrees.max()) if self.n else 0.0

    def same_edges(self, other):
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )


def matvec(graph, x):
    """Return ``A @ x`` for the graph adjacency ``A``."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (graph.n,):
        raise DimensionError(f"expected vector of length {graph.n}, got shape {x.shape}")
    return kernels.csr_matvec(graph.indptr, graph.indices, np.ascontiguousarray(x))


def net_in_cluster(graph):
    """Per-vertex (#same-label neighbours) - (#other-label neighbours), as int64."""
    g = graph.require_labels()
    return kernels.csr_net_in_cluster(graph.indptr, graph.indices, g)


def label_matvec(graph):
    """Exact integer ``A @ g``."""
    g = graph.require_labels()
    return g.astype(np.int64) * net_in_cluster(graph)
