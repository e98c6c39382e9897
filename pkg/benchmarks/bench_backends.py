"""Time the numba kernels against the pure-numpy fallbacks.

Both backends are imported directly, so the env flag does not matter here.
Each kernel is warmed up once (JIT compile), then timed as the best of
``--repeat`` runs. Outputs are cross-checked before anything is printed.

    python3 benchmarks/bench_backends.py [--repeat 5] [--quick]
"""

import argparse
import time

import numpy as np

from fiedler_hotspots.eigen import round_robin_schedule
from fiedler_hotspots.kernels import numba_impl, numpy_impl
from fiedler_hotspots.rng import stream_key


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(quick):
    n_sbm = 1000 if quick else 4000
    n_jac = 60 if quick else 150
    m_knn = 300 if quick else 1200
    rng = np.random.default_rng(0)

    key = stream_key(1)
    indptr, indices = numba_impl.sbm_csr(n_sbm, key, 0.6, 0.4)
    labels = np.where(np.arange(n_sbm) < n_sbm // 2, 1, -1).astype(np.int8)
    x = rng.standard_normal(n_sbm)

    A = rng.standard_normal((n_jac, n_jac))
    A = (A + A.T) / 2
    sched = round_robin_schedule(n_jac)
    tol = 1e-12 * np.linalg.norm(A)

    def jacobi(impl):
        M, V = A.copy(), np.eye(n_jac)
        impl.jacobi_sweeps(M, V, sched, tol, 100)
        return np.sort(np.diag(M))

    X = rng.integers(0, 2, (m_knn, 256)).astype(np.float64)

    return [
        (f"sbm_csr n={n_sbm}", lambda impl: impl.sbm_csr(n_sbm, key, 0.6, 0.4)[1]),
        (f"csr_matvec n={n_sbm}", lambda impl: impl.csr_matvec(indptr, indices, x)),
        (f"csr_net_in_cluster n={n_sbm}", lambda impl: impl.csr_net_in_cluster(indptr, indices, labels)),
        (f"jacobi_sweeps {n_jac}x{n_jac}", jacobi),
        (f"pairwise_sqdist {m_knn}x256", lambda impl: impl.pairwise_sqdist(X)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="small sizes, for a smoke run")
    args = ap.parse_args()
    if numba_impl is None:
        raise SystemExit("numba is not installed")

    print(f"{'kernel':<32}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, fn in cases(args.quick):
        a, b = fn(numba_impl), fn(numpy_impl)
        if not np.allclose(a, b, rtol=1e-10, atol=1e-10):
            raise SystemExit(f"{name}: backends disagree")
        t_nb = best_of(lambda: fn(numba_impl), args.repeat)
        t_np = best_of(lambda: fn(numpy_impl), args.repeat)
        print(f"{name:<32}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
