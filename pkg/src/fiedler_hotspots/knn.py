"""k-nearest-neighbour similarity graphs from labelled feature data."""

import gzip
import math
import struct
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError, ParseError, PreconditionError, ValidationError
from .graph import LabeledGraph, net_in_cluster


@dataclass(frozen=True, eq=False)
class DatasetMatrix:
    """``m`` points by ``d`` features with +/-1 labels."""

    rows: np.ndarray
    labels: np.ndarray
    provenance: str = "synthetic"

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.ndim != 2:
            raise ValidationError(f"rows must be 2-D, got shape {rows.shape}")
        if not np.all(np.isfinite(rows)):
            raise ValidationError("dataset contains missing or non-finite values")
        labels = np.asarray(self.labels)
        if labels.shape != (rows.shape[0],):
            raise ValidationError("need exactly one label per row")
        if not np.all((labels == 1) | (labels == -1)):
            raise ValidationError("labels must be -1 or +1")
        if not (np.any(labels == 1) and np.any(labels == -1)):
            raise ValidationError("both classes must be non-empty")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels.astype(np.int8))

    @property
    def m(self):
        return self.rows.shape[0]

    @property
    def d(self):
        return self.rows.shape[1]

    @property
    def is_binary(self):
        return bool(np.all((self.rows == 0.0) | (self.rows == 1.0)))


def binarize(data, threshold=0.5):
    """Min-max normalise over the whole dataset, then ``x >= threshold -> 1``."""
    x = data.rows
    lo, hi = float(x.min()), float(x.max())
    scaled = (x - lo) / (hi - lo) if hi > lo else np.zeros_like(x)
    return DatasetMatrix((scaled >= threshold).astype(np.float64), data.labels, data.provenance)


def read_dataset_csv(path):
    """Numeric CSV, one point per row, last column the +/-1 label.

    ``#`` lines are skipped, and so is a single non-numeric column-name
    row ahead of the data (as written by the ``synth`` command).
    """
    rows = []
    header_seen = False
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError:
                if not rows and not header_seen:
                    header_seen = True
                    continue
                raise ParseError("non-numeric field", lineno, path) from None
            if len(rows[-1]) < 2:
                raise ParseError("need at least one feature and a label", lineno, path)
            if len(rows[-1]) != len(rows[0]):
                raise ParseError("inconsistent column count", lineno, path)
    if not rows:
        raise ParseError("no data rows", path=path)
    arr = np.array(rows)
    return DatasetMatrix(arr[:, :-1], arr[:, -1].astype(np.int64), f"csv:{path}")


def _open_maybe_gz(path):
    with open(path, "rb") as fh:
        head = fh.read(2)
    return gzip.open(path, "rb") if head == b"\x1f\x8b" else open(path, "rb")


def read_idx(path):
    """Parse an IDX (MNIST raw bytes) unsigned-byte tensor, optionally gzipped."""
    with _open_maybe_gz(path) as fh:
        raw = fh.read()
    if len(raw) < 4 or raw[0] != 0 or raw[1] != 0:
        raise ParseError("not an IDX file", path=path)
    if raw[2] != 0x08:
        raise ParseError(f"unsupported IDX element type 0x{raw[2]:02x}", path=path)
    ndim = raw[3]
    shape = struct.unpack(f">{ndim}I", raw[4:4 + 4 * ndim])
    body = np.frombuffer(raw, dtype=np.uint8, offset=4 + 4 * ndim)
    if body.size != math.prod(shape):
        raise ParseError("IDX payload size does not match header", path=path)
    return body.reshape(shape)


def read_idx_pair(images_path, labels_path, positive, negative, per_class=None, seed=0):
    """Two digit classes from IDX images/labels as a dataset (``positive`` -> +1).

    With ``per_class`` set, that many images of each class are drawn
    without replacement using ``seed``; pixel values are left raw
    (see :func:`binarize`).
    """
    images = read_idx(images_path)
    digits = read_idx(labels_path).reshape(-1)
    if images.shape[0] != digits.shape[0]:
        raise ValidationError("image and label counts differ")
    rng = np.random.default_rng(seed)
    picked = []
    for digit in (positive, negative):
        idx = np.flatnonzero(digits == digit)
        if per_class is not None:
            if idx.size < per_class:
                raise ValidationError(f"only {idx.size} images of digit {digit}")
            idx = np.sort(rng.choice(idx, size=per_class, replace=False))
        picked.append(idx)
    rows = images[np.concatenate(picked)].reshape(sum(p.size for p in picked), -1).astype(np.float64)
    labels = np.concatenate([np.ones(picked[0].size), -np.ones(picked[1].size)])
    return DatasetMatrix(rows, labels.astype(np.int8), f"idx:{images_path}")


def knn_count(m, k_fraction):
    """``max(1, round_half_up(k_fraction * (m - 1)))``."""
    return max(1, int(math.floor(k_fraction * (m - 1) + 0.5)))


def knn_neighbors(rows, k):
    """``(m, k)`` nearest neighbours per point; ties go to the lower index."""
    X = np.ascontiguousarray(rows, dtype=np.float64)
    dist = kernels.pairwise_sqdist(X)
    np.fill_diagonal(dist, np.inf)
    return np.argsort(dist, axis=1, kind="stable")[:, :k]


def build_knn_graph(data, k_fraction):
    """Union-symmetrised Euclidean k-NN graph; ``i~j`` if either picks the other."""
    if not 0.0 < k_fraction < 1.0:
        raise ParameterError(f"k_fraction must lie in (0, 1), got {k_fraction}")
    m = data.m
    if m < 3:
        raise ParameterError("need at least 3 points")
    k = knn_count(m, k_fraction)
    nbrs = knn_neighbors(data.rows, k)
    src = np.repeat(np.arange(m), k)
    return LabeledGraph.from_edges(m, np.column_stack([src, nbrs.reshape(-1)]), data.labels)


def flip_noise(data, rho, seed):
    """Flip every binary feature independently with probability ``rho``."""
    if not 0.0 <= rho <= 1.0:
        raise ParameterError(f"rho must lie in [0, 1], got {rho}")
    if not data.is_binary:
        raise PreconditionError("flip_noise needs binary features; binarize first")
    mask = np.random.default_rng(seed).random(data.rows.shape) < rho
    flipped = np.where(mask, 1.0 - data.rows, data.rows)
    return DatasetMatrix(flipped, data.labels, f"{data.provenance}+flip({rho:g})")


def empirical_delta(graph):
    """``(d_i - mean(d)) / sqrt(n)`` with ``d`` the in-minus-out neighbour counts."""
    d = net_in_cluster(graph)
    return (d - d.mean()) / math.sqrt(graph.n)


def synth_blobs(m_per_class, d, separation, flip_rho_inherent, seed):
    """Two noisy copies of binary prototypes at Hamming distance ``round(separation * d)``.

    Points ``0..m-1`` are class +1, the next ``m`` class -1; each bit of each
    point is flipped with probability ``flip_rho_inherent``.
    """
    if m_per_class < 2 or d < 1:
        raise ParameterError("need m_per_class >= 2 and d >= 1")
    if not 0.0 <= separation <= 1.0 or not 0.0 <= flip_rho_inherent <= 1.0:
        raise ParameterError("separation and flip rate must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    proto_a = rng.integers(0, 2, size=d).astype(np.float64)
    proto_b = proto_a.copy()
    moved = rng.choice(d, size=int(round(separation * d)), replace=False)
    proto_b[moved] = 1.0 - proto_b[moved]
    base = np.vstack([np.tile(proto_a, (m_per_class, 1)), np.tile(proto_b, (m_per_class, 1))])
    noise = rng.random(base.shape) < flip_rho_inherent
    rows = np.where(noise, 1.0 - base, base)
    labels = np.concatenate([np.ones(m_per_class), -np.ones(m_per_class)]).astype(np.int8)
    return DatasetMatrix(rows, labels, f"synth_blobs(seed={seed})")
