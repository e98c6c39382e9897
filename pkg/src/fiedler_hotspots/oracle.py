"""Brute-force reference implementations, for tests only.

Nothing here calls into the CSR kernels, the k-NN builder or the eigen
solvers; inputs are read through plain Python loops.
"""

import numpy as np

ORACLE_MAX = 1000


def loop_net_in_cluster(graph, labels=None):
    """Naive per-vertex scan: same-label neighbours minus other-label neighbours."""
    n = graph.n
    assert n <= ORACLE_MAX, "oracle is for small test graphs"
    g = [int(x) for x in (graph.labels if labels is None else labels)]
    indptr = graph.indptr.tolist()
    cols = graph.indices.tolist()
    out = []
    for i in range(n):
        same = other = 0
        for j in cols[indptr[i]:indptr[i + 1]]:
            if g[j] == g[i]:
                same += 1
            else:
                other += 1
        out.append(same - other)
    return np.array(out, dtype=np.int64)


def brute_knn(rows, k):
    """Full sort of exact squared distances per point; ties by ascending index."""
    X = [list(map(float, r)) for r in np.asarray(rows)]
    m = len(X)
    assert m <= ORACLE_MAX, "oracle is for small datasets"
    out = []
    for i in range(m):
        cand = []
        for j in range(m):
            if j == i:
                continue
            dist = 0.0
            for a, b in zip(X[i], X[j]):
                dist += (a - b) * (a - b)
            cand.append((dist, j))
        cand.sort()
        out.append([j for _, j in cand[:k]])
    return out


def brute_union_edges(neighbor_lists):
    edges = set()
    for i, nbrs in enumerate(neighbor_lists):
        for j in nbrs:
            edges.add((min(i, j), max(i, j)))
    return sorted(edges)


def dense_adjacency(graph):
    """Dense 0/1 matrix built from the edge list, one entry at a time."""
    assert graph.n <= ORACLE_MAX
    A = np.zeros((graph.n, graph.n))
    for i in range(graph.n):
        for j in graph.indices[graph.indptr[i]:graph.indptr[i + 1]]:
            A[i, j] = 1.0
    return A


def loop_matvec(graph, x):
    assert graph.n <= ORACLE_MAX
    out = np.zeros(graph.n)
    for i in range(graph.n):
        acc = 0.0
        for j in graph.indices[graph.indptr[i]:graph.indptr[i + 1]]:
            acc += x[j]
        out[i] = acc
    return out


def loop_sign_error(v2, labels, subset=None):
    idx = range(len(v2)) if subset is None else subset
    idx = list(idx)
    wrong = 0
    for i in idx:
        s = 1 if v2[i] > 0 else (-1 if v2[i] < 0 else 0)
        if s != labels[i]:
            wrong += 1
    return wrong / len(idx)
