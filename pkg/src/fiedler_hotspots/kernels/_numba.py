"""Loop kernels compiled with numba."""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0


@njit(cache=True, inline="always")
def _uniform(key, counter):
    z = key + (counter + _ONE) * _GOLDEN
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return np.float64(z >> _S11) * _INV53


@njit(cache=True)
def sbm_csr(n, key, p, q):
    # an int64 key would promote the hash arithmetic to float64
    key = np.uint64(key)
    half = n // 2
    un = np.uint64(n)
    deg = np.zeros(n, dtype=np.int64)
    for i in range(n):
        ui = np.uint64(i)
        for j in range(i + 1, n):
            thr = p if (i < half) == (j < half) else q
            if _uniform(key, ui * un + np.uint64(j)) < thr:
                deg[i] += 1
                deg[j] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        indptr[i + 1] = indptr[i] + deg[i]
    indices = np.empty(indptr[n], dtype=np.int32)
    cursor = indptr[:-1].copy()
    # row-major generation order leaves every row's columns sorted
    for i in range(n):
        ui = np.uint64(i)
        for j in range(i + 1, n):
            thr = p if (i < half) == (j < half) else q
            if _uniform(key, ui * un + np.uint64(j)) < thr:
                indices[cursor[i]] = j
                cursor[i] += 1
                indices[cursor[j]] = i
                cursor[j] += 1
    return indptr, indices


@njit(cache=True)
def csr_matvec(indptr, indices, x):
    n = indptr.shape[0] - 1
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            acc += x[indices[k]]
        out[i] = acc
    return out


@njit(cache=True)
def csr_net_in_cluster(indptr, indices, labels):
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        li = labels[i]
        acc = 0
        for k in range(indptr[i], indptr[i + 1]):
            if labels[indices[k]] == li:
                acc += 1
            else:
                acc -= 1
        out[i] = acc
    return out


@njit(cache=True)
def _off_norm(M):
    n = M.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += M[i, j] * M[i, j]
    return np.sqrt(s)


@njit(cache=True)
def jacobi_sweeps(M, V, schedule, tol_abs, max_sweeps):
    n = M.shape[0]
    sweeps = 0
    off = _off_norm(M)
    while off > tol_abs and sweeps < max_sweeps:
        for r in range(schedule.shape[0]):
            for h in range(schedule.shape[1]):
                p = schedule[r, h, 0]
                q = schedule[r, h, 1]
                if p < 0:
                    continue
                apq = M[p, q]
                if apq == 0.0:
                    continue
                app = M[p, p]
                aqq = M[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    mkp = M[k, p]
                    mkq = M[k, q]
                    M[k, p] = c * mkp - s * mkq
                    M[k, q] = s * mkp + c * mkq
                for k in range(n):
                    mpk = M[p, k]
                    mqk = M[q, k]
                    M[p, k] = c * mpk - s * mqk
                    M[q, k] = s * mpk + c * mqk
                M[p, p] = app - t * apq
                M[q, q] = aqq + t * apq
                M[p, q] = 0.0
                M[q, p] = 0.0
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * vkq
                    V[k, q] = s * vkp + c * vkq
        sweeps += 1
        off = _off_norm(M)
    return sweeps, off


@njit(cache=True)
def pairwise_sqdist(X):
    m, d = X.shape
    out = np.zeros((m, m), dtype=np.float64)
    for i in range(m):
        for j in range(i + 1, m):
            acc = 0.0
            for k in range(d):
                diff = X[i, k] - X[j, k]
                acc += diff * diff
            out[i, j] = acc
            out[j, i] = acc
    return out
