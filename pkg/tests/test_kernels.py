"""The compiled and numpy kernels must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from fiedler_hotspots.eigen import round_robin_schedule
from fiedler_hotspots.kernels import numba_impl, numpy_impl
from fiedler_hotspots.rng import stream_key

pytestmark = pytest.mark.skipif(numba_impl is None, reason="numba unavailable")


@pytest.mark.parametrize("n,p,q,seed", [(2, 0.5, 0.2, 0), (10, 0.7, 0.3, 1), (301, 0.3, 0.1, 5), (400, 0.6, 0.4, 2**63 + 11)])
def test_sbm_bit_identical(n, p, q, seed):
    key = np.uint64(stream_key(seed))
    a = numba_impl.sbm_csr(n, key, p, q)
    b = numpy_impl.sbm_csr(n, key, p, q)
    assert np.array_equal(a[0], b[0])
    assert np.array_equal(a[1], b[1])


def test_sbm_accepts_python_int_key():
    key = stream_key(1)
    assert key < 2**63
    a = numba_impl.sbm_csr(50, key, 0.5, 0.2)
    b = numpy_impl.sbm_csr(50, np.uint64(key), 0.5, 0.2)
    assert np.array_equal(a[1], b[1])


def test_csr_products_agree():
    key = np.uint64(stream_key(3))
    indptr, indices = numba_impl.sbm_csr(300, key, 0.2, 0.05)
    x = np.random.default_rng(0).standard_normal(300)
    np.testing.assert_allclose(
        numba_impl.csr_matvec(indptr, indices, x), numpy_impl.csr_matvec(indptr, indices, x), rtol=1e-13, atol=1e-13
    )
    labels = np.where(np.arange(300) < 150, 1, -1).astype(np.int8)
    assert np.array_equal(
        numba_impl.csr_net_in_cluster(indptr, indices, labels),
        numpy_impl.csr_net_in_cluster(indptr, indices, labels),
    )


def test_empty_rows_handled(impl):
    indptr = np.array([0, 0, 1, 2, 2], dtype=np.int64)
    indices = np.array([2, 1], dtype=np.int32)
    out = impl.csr_matvec(indptr, indices, np.array([1.0, 2.0, 3.0, 4.0]))
    assert out.tolist() == [0.0, 3.0, 2.0, 0.0]


@pytest.mark.parametrize("n", [2, 3, 7, 40])
def test_jacobi_agrees(n):
    X = np.random.default_rng(n).standard_normal((n, n))
    M = X + X.T
    sched = round_robin_schedule(n)
    out = []
    for mod in (numba_impl, numpy_impl):
        A = M.copy()
        V = np.eye(n)
        sweeps, off = mod.jacobi_sweeps(A, V, sched, 1e-12 * np.linalg.norm(M), 100)
        assert off <= 1e-12 * np.linalg.norm(M)
        out.append(np.sort(np.diag(A)))
    np.testing.assert_allclose(out[0], out[1], rtol=0, atol=1e-12 * np.abs(M).max() * n)


def test_pairwise_sqdist_agree_binary():
    X = (np.random.default_rng(1).random((60, 33)) < 0.5).astype(float)
    a = numba_impl.pairwise_sqdist(X)
    b = numpy_impl.pairwise_sqdist(X)
    assert np.array_equal(a, b)
    assert np.all(np.diag(a) == 0)


@pytest.mark.parametrize("value, expected", [("numpy", "numpy"), ("numba", "numba"), ("", "numba")])
def test_backend_env_flag(value, expected):
    env = dict(os.environ, FIEDLER_HOTSPOTS_BACKEND=value)
    code = "from fiedler_hotspots import kernels; print(kernels.BACKEND)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert res.stdout.strip() == expected


def test_backend_env_flag_rejects_unknown():
    env = dict(os.environ, FIEDLER_HOTSPOTS_BACKEND="cuda")
    res = subprocess.run([sys.executable, "-c", "import fiedler_hotspots"], env=env, capture_output=True, text=True)
    assert res.returncode != 0 and "FIEDLER_HOTSPOTS_BACKEND" in res.stderr
