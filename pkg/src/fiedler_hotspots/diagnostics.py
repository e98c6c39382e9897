"""Affinity surplus, the expansion of v2 around g/sqrt(n), and extremal-set errors."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    EmptySubsetError,
    OrientationError,
    ParameterError,
    PreconditionError,
)
from .graph import LabeledGraph, _check_labels, label_matvec


def _check_pq(p, q, strict):
    if strict:
        ok = 0.0 < q < p < 1.0
    else:
        ok = 0.0 <= q < p <= 1.0
    if not ok:
        raise ParameterError(f"invalid block probabilities p={p}, q={q}")


def _adjacency_times_labels(graph, labels):
    """``(A g, g)``; integer-exact when ``graph`` is a LabeledGraph."""
    if isinstance(graph, LabeledGraph):
        g = graph.labels if labels is None else _check_labels(labels, graph.n)
        if g is None:
            raise PreconditionError("labels required")
        if labels is not None:
            graph = graph.with_labels(g)
        return label_matvec(graph).astype(np.float64), g
    M = np.asarray(graph, dtype=np.float64)
    if labels is None:
        raise PreconditionError("labels required for a dense adjacency")
    g = _check_labels(labels, M.shape[0])
    return M @ g.astype(np.float64), g


def compute_delta(graph, p, q, *, labels=None, strict=True):
    """``A g - (p - q) n / 2 * g``.

    ``g_i * delta_i`` is vertex i's in-minus-out neighbour count in excess of
    its expectation. ``strict=False`` admits the limits ``q = 0``/``p = 1``
    for hand-built fixtures.
    """
    _check_pq(p, q, strict)
    Ag, g = _adjacency_times_labels(graph, labels)
    n = g.shape[0]
    return Ag - 0.5 * (p - q) * n * g


@dataclass(frozen=True, eq=False)
class FiedlerDiagnostics:
    """Decomposition ``e2 = local_term + global_shift * g/sqrt(n) + theorem_residual``.

    ``e2`` is the raw difference ``v2 - g/sqrt(n)``; it is not forced to be
    orthogonal to ``g`` (``e2_dot_g`` reports the overlap).
    """

    n: int
    p: float
    q: float
    labels: np.ndarray
    v2: np.ndarray
    lambda2: float
    e2: np.ndarray
    delta: np.ndarray
    local_term: np.ndarray
    global_shift: float
    theorem_residual: np.ndarray
    lambda2_dev: float
    e2_dot_g: float
    norms: dict = field(default_factory=dict)

    @property
    def surplus(self):
        """``g * delta``: centred in-minus-out neighbour surplus per vertex."""
        return self.labels * self.delta

    @property
    def residual_norm(self):
        return self.norms["theorem_residual"]


def decompose_fiedler(pair, graph, p, q, *, labels=None, strict=True):
    """Split ``e2 = v2 - g/sqrt(n)`` into its local, global and residual parts.

    With ``c = 2 / ((p - q) n^1.5)``::

        local_term       = c * delta
        global_shift     = -2 (lambda2 - (p - q) n / 2) / ((p - q) n)
        theorem_residual = e2 - c * (A g - lambda2 g)

    ``pair.v2`` must already be oriented so that ``<v2, g> >= 0``.
    """
    delta = compute_delta(graph, p, q, labels=labels, strict=strict)
    Ag, g = _adjacency_times_labels(graph, labels)
    n = g.shape[0]
    v2 = np.asarray(pair.v2, dtype=np.float64)
    if v2.shape != (n,):
        raise DimensionError(f"v2 has shape {v2.shape}, expected ({n},)")
    gf = g.astype(np.float64)
    if np.dot(v2, gf) < 0:
        raise OrientationError("v2 must satisfy <v2, g> >= 0; orient it first")
    lam2 = float(pair.lambda2)
    sqrt_n = math.sqrt(n)
    centre = 0.5 * (p - q) * n
    c = 2.0 / ((p - q) * n ** 1.5)
    e2 = v2 - gf / sqrt_n
    local = c * delta
    shift = -2.0 * (lam2 - centre) / ((p - q) * n)
    residual = e2 - c * (Ag - lam2 * gf)
    norms = {
        "e2": float(np.linalg.norm(e2)),
        "e2_sup": float(np.abs(e2).max()),
        "delta": float(np.linalg.norm(delta)),
        "local_term": float(np.linalg.norm(local)),
        "global_shift": float(abs(shift) * np.linalg.norm(gf) / sqrt_n),
        "theorem_residual": float(np.linalg.norm(residual)),
    }
    return FiedlerDiagnostics(
        n=n,
        p=float(p),
        q=float(q),
        labels=g,
        v2=v2,
        lambda2=lam2,
        e2=e2,
        delta=delta,
        local_term=local,
        global_shift=float(shift),
        theorem_residual=residual,
        lambda2_dev=(lam2 - centre) / sqrt_n,
        e2_dot_g=float(np.dot(e2, gf)),
        norms=norms,
    )


_SIDES = {"positive": "positive", "negative": "negative", "magnitude": "magnitude", "both": "magnitude"}


def subset_size(n, eps):
    # the 1e-9 guard keeps e.g. 0.29 * 100 from flooring to 28
    return max(1, int(math.floor(eps * n + 1e-9)))


def extremal_indices(v2, eps, side="positive"):
    """Indices of the extremal entries of ``v2``.

    ``positive``: the ``max(1, floor(eps*n))`` largest strictly positive
    entries (fewer, possibly none, if there are not enough positives).
    ``negative``: likewise the most negative entries. ``magnitude`` (alias
    ``both``): largest ``|v2|`` among nonzero entries. Ties go to the lower
    index; results are ordered from most extreme.
    """
    if not 0.0 < eps <= 1.0:
        raise ParameterError(f"eps must lie in (0, 1], got {eps}")
    try:
        side = _SIDES[side]
    except KeyError:
        raise ParameterError(f"unknown side {side!r}") from None
    v = np.asarray(v2, dtype=np.float64)
    k = subset_size(v.shape[0], eps)
    if side == "positive":
        key = np.where(v > 0, -v, np.inf)
    elif side == "negative":
        key = np.where(v < 0, v, np.inf)
    else:
        key = np.where(v != 0, -np.abs(v), np.inf)
    order = np.argsort(key, kind="stable")
    chosen = order[:k]
    return chosen[np.isfinite(key[chosen])]


def classification_error(v2, labels, subset=None, *, label_aligned=True):
    """Fraction of ``subset`` (default: all) where ``sign(v2) != label``.

    A zero entry always counts as an error. When the orientation of ``v2``
    was not fixed against the labels (``label_aligned=False``) the better of
    the two sign conventions, ``min(err, 1 - err)``, is returned.
    """
    v = np.asarray(v2, dtype=np.float64)
    g = np.asarray(labels)
    if v.shape != g.shape:
        raise DimensionError(f"v2 shape {v.shape} != labels shape {g.shape}")
    if subset is not None:
        idx = np.asarray(subset, dtype=np.int64)
        if idx.size == 0:
            raise EmptySubsetError("classification error of an empty subset is undefined")
        v, g = v[idx], g[idx]
    elif v.size == 0:
        raise EmptySubsetError("classification error of an empty vector is undefined")
    wrong = np.count_nonzero(np.sign(v) != g)
    err = wrong / v.shape[0]
    if not label_aligned:
        err = min(err, 1.0 - err)
    return err


@dataclass(frozen=True)
class ErrorReport:
    """Global error plus, per eps, the error on the union of both extremal sides."""

    global_error: float
    subset_errors: dict
    side_errors: dict
    subset_sizes: dict
    label_aligned: bool = True


def error_report(v2, labels, eps_list, *, label_aligned=True):
    glob = classification_error(v2, labels, label_aligned=label_aligned)
    subset_errors, side_errors, sizes = {}, {}, {}
    for eps in eps_list:
        pos = extremal_indices(v2, eps, "positive")
        neg = extremal_indices(v2, eps, "negative")
        both = np.concatenate([pos, neg])
        subset_errors[eps] = classification_error(v2, labels, both, label_aligned=label_aligned)
        side_errors[eps] = tuple(
            classification_error(v2, labels, s, label_aligned=label_aligned) if s.size else math.nan
            for s in (pos, neg)
        )
        sizes[eps] = (int(pos.size), int(neg.size))
    return ErrorReport(glob, subset_errors, side_errors, sizes, label_aligned)


def corollary_fraction(diag, eps, eta):
    """Per side, the share of extremal vertices whose surplus is at least ``eta * sqrt(n)``.

    Surplus is ``g_i * delta_i`` (in-minus-out neighbours minus its mean).
    Returns ``(positive_side, negative_side)``; an empty side gives NaN.
    ``eta = -inf`` disables the threshold.
    """
    threshold = eta * math.sqrt(diag.n)
    surplus = diag.surplus
    out = []
    for side in ("positive", "negative"):
        idx = extremal_indices(diag.v2, eps, side)
        if idx.size == 0:
            out.append(math.nan)
        else:
            out.append(float(np.count_nonzero(surplus[idx] >= threshold)) / idx.size)
    return tuple(out)


def lemma_probe(pair, graph=None, *, labels=None):
    """``|<v1, v2 - g/sqrt(n)>|``."""
    if labels is None:
        if graph is None:
            raise PreconditionError("labels required")
        labels = graph.require_labels()
    g = np.asarray(labels, dtype=np.float64)
    e2 = np.asarray(pair.v2) - g / math.sqrt(g.shape[0])
    return abs(float(np.dot(pair.v1, e2)))
