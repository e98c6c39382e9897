"""Vectorised numpy equivalents of the numba kernels.

Results match the compiled path exactly for integer-valued work (SBM
sampling, neighbour counting, binary distances) and up to summation order
elsewhere.
"""

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 1.0 / 9007199254740992.0


def _uniform(key, counters):
    z = np.uint64(key) + (counters + np.uint64(1)) * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z ^= z >> np.uint64(31)
    return (z >> np.uint64(11)).astype(np.float64) * _INV53


def sbm_csr(n, key, p, q):
    half = n // 2
    rows = []
    cols = []
    un = np.uint64(n)
    for i in range(n - 1):
        j = np.arange(i + 1, n, dtype=np.uint64)
        thr = np.where((j < half) == (i < half), p, q)
        hit = _uniform(key, np.uint64(i) * un + j) < thr
        cj = j[hit].astype(np.int64)
        cols.append(cj)
        rows.append(np.full(cj.shape[0], i, dtype=np.int64))
    if rows:
        u = np.concatenate(rows)
        v = np.concatenate(cols)
    else:
        u = v = np.zeros(0, dtype=np.int64)
    # interleave (u->v, v->u) in generation order; a stable sort by row
    # then leaves each row's columns ascending
    src = np.empty(2 * u.shape[0], dtype=np.int64)
    dst = np.empty_like(src)
    src[0::2], src[1::2] = u, v
    dst[0::2], dst[1::2] = v, u
    order = np.argsort(src, kind="stable")
    indices = dst[order].astype(np.int32)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, indices


def _row_ids(indptr):
    return np.repeat(np.arange(indptr.shape[0] - 1), np.diff(indptr))


def csr_matvec(indptr, indices, x):
    n = indptr.shape[0] - 1
    return np.bincount(_row_ids(indptr), weights=x[indices], minlength=n).astype(np.float64)


def csr_net_in_cluster(indptr, indices, labels):
    n = indptr.shape[0] - 1
    rows = _row_ids(indptr)
    same = labels[rows] == labels[indices]
    return np.bincount(rows[same], minlength=n) - np.bincount(rows[~same], minlength=n)


def _off_norm(M):
    off = M.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.sqrt(np.sum(off * off)))


def jacobi_sweeps(M, V, schedule, tol_abs, max_sweeps):
    # rotations within a round touch disjoint index pairs, so they commute
    # and can be applied as one batch
    rounds = []
    for r in range(schedule.shape[0]):
        pairs = schedule[r]
        pairs = pairs[pairs[:, 0] >= 0]
        rounds.append((pairs[:, 0].copy(), pairs[:, 1].copy()))
    sweeps = 0
    off = _off_norm(M)
    while off > tol_abs and sweeps < max_sweeps:
        for P, Q in rounds:
            apq = M[P, Q]
            live = apq != 0.0
            if not live.any():
                continue
            P, Q, apq = P[live], Q[live], apq[live]
            app = M[P, P]
            aqq = M[Q, Q]
            with np.errstate(over="ignore"):
                theta = (aqq - app) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 0.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t = np.where(safe == 0.0, 1.0, t)
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            colp = M[:, P]
            colq = M[:, Q]
            M[:, P] = c * colp - s * colq
            M[:, Q] = s * colp + c * colq
            rowp = M[P, :]
            rowq = M[Q, :]
            M[P, :] = c[:, None] * rowp - s[:, None] * rowq
            M[Q, :] = s[:, None] * rowp + c[:, None] * rowq
            M[P, P] = app - t * apq
            M[Q, Q] = aqq + t * apq
            M[P, Q] = 0.0
            M[Q, P] = 0.0
            vp = V[:, P]
            vq = V[:, Q]
            V[:, P] = c * vp - s * vq
            V[:, Q] = s * vp + c * vq
        sweeps += 1
        off = _off_norm(M)
    return sweeps, off


def pairwise_sqdist(X):
    m, d = X.shape
    out = np.empty((m, m), dtype=np.float64)
    block = max(1, 4_000_000 // max(1, m * d))
    for i0 in range(0, m, block):
        diff = X[i0:i0 + block, None, :] - X[None, :, :]
        out[i0:i0 + block] = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(out, 0.0)
    return out
