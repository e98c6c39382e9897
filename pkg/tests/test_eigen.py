import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiedler_hotspots.eigen import dense_full_spectrum, orient, round_robin_schedule, top2_symmetric
from fiedler_hotspots.errors import ConvergenceError, ParameterError, ValidationError
from fiedler_hotspots.graph import LabeledGraph, matvec
from fiedler_hotspots.sbm import SbmParams, sample_sbm

from .conftest import random_graph


def test_orient_examples():
    s = 1 / np.sqrt(2)
    np.testing.assert_array_equal(orient(np.array([-s, -s]), np.ones(2)), [s, s])
    v = np.array([0.1, -0.9]) / np.hypot(0.1, 0.9)
    np.testing.assert_array_equal(orient(v), -v)
    np.testing.assert_array_equal(orient(-v), -v)
    with pytest.raises(ParameterError):
        orient(np.zeros(3))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=1, max_size=20), st.booleans())
def test_orient_idempotent(vals, with_ref):
    v = np.array(vals)
    if not np.any(v):
        return
    ref = np.arange(v.size) - 3.0 if with_ref else None
    once = orient(v, ref)
    np.testing.assert_array_equal(orient(once, ref), once)
    np.testing.assert_array_equal(orient(-v, ref), once)


def test_schedule_covers_all_pairs_once():
    for n in (2, 5, 8, 13):
        sched = round_robin_schedule(n)
        pairs = [tuple(x) for x in sched.reshape(-1, 2) if x[0] >= 0]
        assert len(pairs) == len(set(pairs)) == n * (n - 1) // 2
        for rnd in sched:
            used = [i for x in rnd if x[0] >= 0 for i in x]
            assert len(used) == len(set(used))


def test_jacobi_2x2():
    w, V = dense_full_spectrum([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(w, [1.0, -1.0], atol=1e-15)
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(V[:, 0], [s, s], atol=1e-15)
    np.testing.assert_allclose(np.abs(V[:, 1]), [s, s], atol=1e-15)


def test_jacobi_reconstruction_50():
    X = np.random.default_rng(5).standard_normal((50, 50))
    M = (X + X.T) / 2
    w, V = dense_full_spectrum(M)
    assert np.all(np.diff(w) <= 0)
    assert np.linalg.norm(V @ np.diag(w) @ V.T - M) < 1e-9
    assert np.linalg.norm(V.T @ V - np.eye(50)) < 1e-12


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValidationError):
        dense_full_spectrum([[0.0, 1.0], [0.5, 0.0]])


def test_cycle4(cycle4):
    pair = top2_symmetric(cycle4)
    assert pair.lambda1 == pytest.approx(2.0, abs=1e-10)
    assert pair.lambda2 == pytest.approx(0.0, abs=1e-10)
    np.testing.assert_allclose(pair.v1, [0.5] * 4, atol=1e-10)
    assert pair.gap_warning  # lambda2 = lambda3 = 0


def test_two_k2_degenerate_top(two_k2):
    # documented behaviour: both vectors of the lambda = 1 eigenspace, flagged
    pair = top2_symmetric(two_k2, tol=1e-10)
    assert pair.lambda1 == pytest.approx(1.0, abs=1e-10)
    assert pair.lambda2 == pytest.approx(1.0, abs=1e-10)
    assert pair.gap_warning
    A = two_k2.to_dense()
    for v in (pair.v1, pair.v2):
        assert np.linalg.norm(A @ v - v) <= 1e-10 * 1
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
    assert abs(pair.v1 @ pair.v2) < 1e-12


def test_small_n_rejected():
    with pytest.raises(ParameterError):
        top2_symmetric(np.ones((1, 1)))
    with pytest.raises(ParameterError):
        top2_symmetric(np.eye(3), tol=0)


def test_convergence_error_carries_residual():
    X = np.random.default_rng(0).standard_normal((300, 300))
    with pytest.raises(ConvergenceError) as info:
        top2_symmetric((X + X.T) / 2, tol=1e-14, max_iter=30, krylov_dim=10)
    assert np.isfinite(info.value.best_residual) and info.value.best_residual > 0


def test_pair_invariants_and_rayleigh():
    g = sample_sbm(SbmParams(400, 0.5, 0.2, 9))
    pair = top2_symmetric(g)
    assert abs(np.linalg.norm(pair.v1) - 1) < 1e-12
    assert abs(np.linalg.norm(pair.v2) - 1) < 1e-12
    assert abs(pair.v1 @ pair.v2) < 1e-8
    tol = 1e-10 * g.norm1()
    assert pair.residual1 <= tol and pair.residual2 <= tol
    assert pair.v1.sum() >= 0 and pair.v2 @ g.labels >= 0
    for lam, v in ((pair.lambda1, pair.v1), (pair.lambda2, pair.v2)):
        assert abs(v @ matvec(g, v) - lam) <= 1e-8 * abs(lam)
        assert np.linalg.norm(matvec(g, v) - lam * v) <= tol * 1.01


def test_matches_dense_oracle_on_graphs():
    for seed in range(3):
        g = sample_sbm(SbmParams(120, 0.5, 0.1, seed))
        w, V = dense_full_spectrum(g.to_dense())
        pair = top2_symmetric(g)
        assert pair.lambda1 == pytest.approx(w[0], rel=1e-10)
        assert pair.lambda2 == pytest.approx(w[1], rel=1e-10)
        assert abs(pair.v2 @ V[:, 1]) > 1 - 1e-10


def test_permutation_equivariance():
    g = sample_sbm(SbmParams(300, 0.5, 0.2, 2))
    perm = np.random.default_rng(1).permutation(300)
    h = g.permute(perm)
    a, b = top2_symmetric(g), top2_symmetric(h)
    assert abs(a.lambda1 - b.lambda1) < 1e-10 * a.lambda1
    assert abs(a.lambda2 - b.lambda2) < 1e-10 * a.lambda1
    np.testing.assert_allclose(b.v2, a.v2[perm], atol=1e-9)
    np.testing.assert_allclose(b.v1, a.v1[perm], atol=1e-9)


def test_deterministic():
    g = random_graph(80, 0.2, 3)
    a, b = top2_symmetric(g), top2_symmetric(g)
    assert np.array_equal(a.v2, b.v2) and a.lambda2 == b.lambda2


def test_dense_input_without_labels_uses_magnitude_rule():
    M = np.diag([3.0, 2.0, 1.0])
    pair = top2_symmetric(M)
    np.testing.assert_allclose(pair.v2, [0, 1, 0], atol=1e-12)
