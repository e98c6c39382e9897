"""Two-block stochastic block model G(n, p, q)."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CapacityError, ParameterError
from .graph import LabeledGraph
from .rng import stream_key

MAX_DENSE_N = 4096


@dataclass(frozen=True)
class SbmParams:
    """``n`` vertices split into two blocks of ``n/2``; requires ``0 < q < p < 1``."""

    n: int
    p: float
    q: float
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise ParameterError(f"n must be an even integer >= 2, got {self.n}")
        if not (0.0 < self.q < self.p < 1.0):
            raise ParameterError(f"need 0 < q < p < 1, got p={self.p}, q={self.q}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def with_seed(self, seed):
        return SbmParams(self.n, self.p, self.q, int(seed))


def block_labels(n):
    g = np.ones(n, dtype=np.int8)
    g[n // 2:] = -1
    return g


def sample_sbm(params):
    """Draw one graph; vertices ``0..n/2-1`` get label +1, the rest -1.

    Pair ``(i, j)``, ``i < j``, is an edge iff ``uniform(seed, i*n + j)`` is
    below ``p`` (same block) or ``q`` (different blocks); see :mod:`.rng`.
    """
    if not isinstance(params, SbmParams):
        raise ParameterError("expected SbmParams")
    key = np.uint64(stream_key(params.seed))
    indptr, indices = kernels.sbm_csr(params.n, key, float(params.p), float(params.q))
    return LabeledGraph.from_csr(params.n, indptr, indices, block_labels(params.n), validate=False)


def expected_edge_moments(params):
    """Mean and variance of the total edge count."""
    h = params.n // 2
    within = h * (h - 1)  # both blocks: 2 * C(h, 2)
    across = h * h
    mean = params.p * within + params.q * across
    var = params.p * (1 - params.p) * within + params.q * (1 - params.q) * across
    return mean, var


def expectation_matrix(params):
    """Dense block-constant E[A]: ``p`` on both diagonal blocks, ``q`` off them.

    The diagonal is ``p`` as well (not 0); within the tolerances used here
    that O(1) difference from E[A] is immaterial, and it keeps the
    matrix exactly rank 2.
    """
    n = params.n
    if n > MAX_DENSE_N:
        raise CapacityError(f"dense expectation matrix limited to n <= {MAX_DENSE_N}, got {n}")
    g = block_labels(n).astype(np.float64)
    same = np.equal.outer(g, g)
    return np.where(same, params.p, params.q)
