"""Hot kernels, compiled with numba or run as plain numpy.

The backend is picked once at import time from ``FIEDLER_HOTSPOTS_BACKEND``
(``numba`` or ``numpy``). When unset, numba is used if it imports.
Both implementations stay importable as ``kernels.numba_impl`` /
``kernels.numpy_impl`` for cross-checks and benchmarks.
"""

import os

from . import _numpy as numpy_impl

ENV_VAR = "FIEDLER_HOTSPOTS_BACKEND"

try:
    from . import _numba as numba_impl
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_impl = None


def _select():
    requested = os.environ.get(ENV_VAR, "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {requested!r}")
    if requested == "numpy" or numba_impl is None:
        return "numpy", numpy_impl
    return "numba", numba_impl


BACKEND, _impl = _select()

sbm_csr = _impl.sbm_csr
csr_matvec = _impl.csr_matvec
csr_net_in_cluster = _impl.csr_net_in_cluster
jacobi_sweeps = _impl.jacobi_sweeps
pairwise_sqdist = _impl.pairwise_sqdist

__all__ = [
    "BACKEND",
    "ENV_VAR",
    "numba_impl",
    "numpy_impl",
    "sbm_csr",
    "csr_matvec",
    "csr_net_in_cluster",
    "jacobi_sweeps",
    "pairwise_sqdist",
]
