"""Top-two adjacency eigenpairs and a dense Jacobi reference solver."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import ConvergenceError, DimensionError, ParameterError, ValidationError
from .graph import LabeledGraph, matvec

START_SEED = 0x5EED_F1ED_1E12
DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SpectralPair:
    lambda1: float
    lambda2: float
    v1: np.ndarray
    v2: np.ndarray
    residual1: float
    residual2: float
    iterations: int
    gap_warning: bool = False
    lambda3_estimate: float = float("nan")


def orient(v, reference=None):
    """Fix the sign of ``v``.

    With a reference, make ``<v, reference> >= 0``; otherwise (or when that
    inner product is exactly zero) make the first largest-magnitude entry
    positive.
    """
    v = np.asarray(v, dtype=np.float64)
    if not np.any(v):
        raise ParameterError("cannot orient the zero vector")
    if reference is not None:
        dot = float(np.dot(v, np.asarray(reference, dtype=np.float64)))
        if dot != 0.0:
            return v if dot > 0 else -v
    k = int(np.argmax(np.abs(v)))
    return v if v[k] > 0 else -v


class _Operator:
    def __init__(self, A):
        if isinstance(A, LabeledGraph):
            self.n = A.n
            self.apply = lambda x: matvec(A, x)
            self.norm1 = A.norm1()
            self.labels = A.labels
        else:
            M = np.asarray(A, dtype=np.float64)
            if M.ndim != 2 or M.shape[0] != M.shape[1]:
                raise DimensionError(f"expected a square matrix, got shape {M.shape}")
            self.n = M.shape[0]
            self.apply = M.dot
            self.norm1 = float(np.abs(M).sum(axis=0).max()) if self.n else 0.0
            self.labels = None


def _orthonormalize(r, V):
    # classical Gram-Schmidt, applied twice
    for _ in range(2):
        r = r - V @ (V.T @ r)
    return r


def top2_symmetric(A, tol=DEFAULT_TOL, max_iter=5000, *, labels=None, krylov_dim=None):
    """Two algebraically largest eigenpairs of a symmetric operator.

    ``A`` is a :class:`LabeledGraph` (matrix-free via CSR products) or a dense
    symmetric array. Thick-restarted Lanczos with full reorthogonalisation:
    the basis grows to ``krylov_dim`` vectors, Ritz pairs come from the
    projected matrix ``V.T A V``, and the leading Ritz vectors seed the next
    cycle. Both residuals ``||A v - lambda v||`` must drop to
    ``tol * ||A||_1``. ``max_iter`` bounds the number of operator products.

    A Krylov breakdown (invariant subspace) is continued with a fresh vector
    orthogonal to the basis, so degenerate top eigenvalues (e.g. two
    disjoint edges, lambda1 = lambda2 = 1) yield two orthonormal vectors that
    span the eigenspace, with ``gap_warning`` set; no error is raised.

    ``v1`` is oriented towards the all-ones vector; ``v2`` towards
    ``labels`` (default: the graph's labels) if known, else by its
    largest-magnitude entry.
    """
    op = _Operator(A)
    n = op.n
    if n < 2:
        raise ParameterError("need n >= 2")
    if not tol > 0:
        raise ParameterError("tol must be positive")
    if labels is None:
        labels = op.labels

    m = min(n, krylov_dim or max(24, min(64, n // 4)))
    m = max(m, min(n, 4))
    keep = min(m - 1, max(2, m // 2))
    scale = max(op.norm1, np.finfo(float).tiny)
    target = tol * scale
    breakdown = 1e-12 * scale

    rng = np.random.default_rng(START_SEED)
    V = np.zeros((n, m))
    W = np.zeros((n, m))

    def fresh(j):
        for _ in range(8):
            r = _orthonormalize(rng.standard_normal(n), V[:, :j])
            nr = np.linalg.norm(r)
            if nr > 1e-8:
                return r / nr
        return None

    V[:, 0] = fresh(0)
    j = 0
    matvecs = 0
    best = np.inf
    while True:
        exhausted = False
        while j < m:
            W[:, j] = op.apply(V[:, j])
            matvecs += 1
            if j + 1 == m:
                j += 1
                break
            r = _orthonormalize(W[:, j], V[:, :j + 1])
            nr = np.linalg.norm(r)
            if nr <= breakdown:
                if j + 1 >= n:
                    j += 1
                    exhausted = True
                    break
                r = fresh(j + 1)
                if r is None:
                    j += 1
                    exhausted = True
                    break
                V[:, j + 1] = r
            else:
                V[:, j + 1] = r / nr
            j += 1

        H = V[:, :j].T @ W[:, :j]
        H = 0.5 * (H + H.T)
        theta, S = np.linalg.eigh(H)
        order = np.argsort(theta)[::-1]
        theta, S = theta[order], S[:, order]
        X = V[:, :j] @ S[:, :2]
        AX = W[:, :j] @ S[:, :2]
        R = AX - X * theta[:2]
        res = np.linalg.norm(R, axis=0)
        best = min(best, float(res.max()))
        if res.max() <= target or j >= n or exhausted:
            break
        if matvecs >= max_iter:
            raise ConvergenceError(
                f"top2_symmetric: no convergence after {matvecs} products "
                f"(residuals {res[0]:.3e}, {res[1]:.3e}; target {target:.3e})",
                best_residual=best,
                iterations=matvecs,
            )
        k = min(keep, j)
        V[:, :k] = V[:, :j] @ S[:, :k]
        W[:, :k] = W[:, :j] @ S[:, :k]
        V[:, k:] = 0.0
        W[:, k:] = 0.0
        # continue the Krylov sequence from the residual of the leading
        # unconverged Ritz vector
        lead = 0 if res[0] > target else 1
        r = _orthonormalize(R[:, lead], V[:, :k])
        nr = np.linalg.norm(r)
        if nr <= breakdown:
            r = fresh(k)
            if r is None:
                break
            V[:, k] = r
        else:
            V[:, k] = r / nr
        j = k

    if res.max() > target:
        raise ConvergenceError(
            f"top2_symmetric: residuals {res[0]:.3e}, {res[1]:.3e} above target {target:.3e}",
            best_residual=best,
            iterations=matvecs,
        )
    v1 = X[:, 0] / np.linalg.norm(X[:, 0])
    v2 = X[:, 1] - np.dot(v1, X[:, 1]) * v1
    v2 = v2 / np.linalg.norm(v2)
    v1 = orient(v1, np.ones(n))
    v2 = orient(v2, labels)
    lam3 = float(theta[2]) if theta.shape[0] > 2 else float("nan")
    slack = 10.0 * target
    gap = (theta[0] - theta[1]) <= slack or (theta.shape[0] > 2 and theta[1] - theta[2] <= slack)
    return SpectralPair(
        lambda1=float(theta[0]),
        lambda2=float(theta[1]),
        v1=v1,
        v2=v2,
        residual1=float(res[0]),
        residual2=float(res[1]),
        iterations=matvecs,
        gap_warning=bool(gap),
        lambda3_estimate=lam3,
    )


@lru_cache(maxsize=32)
def round_robin_schedule(n):
    """Cyclic Jacobi ordering as ``(rounds, n_pad/2, 2)`` index pairs.

    Circle-method tournament: every pair ``p < q`` appears exactly once per
    sweep and pairs within a round are disjoint. Byes (odd ``n``) are ``-1``.
    """
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        pairs = []
        for k in range(size // 2):
            a, b = players[k], players[size - 1 - k]
            if a >= n or b >= n:
                pairs.append((-1, -1))
            else:
                pairs.append((min(a, b), max(a, b)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    out = np.array(rounds, dtype=np.int64).reshape(size - 1, size // 2, 2)
    out.setflags(write=False)
    return out


def dense_full_spectrum(M, tol=1e-12, max_sweeps=100, max_n=512):
    """All eigenpairs of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm is below
    ``tol * ||M||_F``. Returns ``(eigenvalues, eigenvectors)`` sorted
    descending, eigenvectors as columns, each with its first largest-magnitude
    entry made positive.
    """
    M = np.array(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    if n > max_n:
        raise ValidationError(f"dense_full_spectrum is meant for n <= {max_n}, got {n}")
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    amax = float(np.abs(M).max())
    if np.abs(M - M.T).max() > 1e-12 * max(1.0, amax):
        raise ValidationError("matrix is not symmetric")
    M = 0.5 * (M + M.T)
    V = np.eye(n)
    if n > 1:
        fro = float(np.linalg.norm(M))
        sweeps, off = kernels.jacobi_sweeps(M, V, round_robin_schedule(n), tol * fro, max_sweeps)
        if off > tol * fro:
            raise ConvergenceError(
                f"Jacobi: off-diagonal norm {off:.3e} after {sweeps} sweeps",
                best_residual=off,
                iterations=sweeps,
            )
    w = np.diag(M).copy()
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]
    for k in range(n):
        V[:, k] = orient(V[:, k])
    return w, V
