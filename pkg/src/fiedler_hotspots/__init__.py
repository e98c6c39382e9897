"""Fiedler-vector magnitude diagnostics for two-block SBMs and k-NN graphs."""

__version__ = "0.1.0"

from .diagnostics import (  # noqa: E402
    ErrorReport,
    FiedlerDiagnostics,
    classification_error,
    compute_delta,
    corollary_fraction,
    decompose_fiedler,
    error_report,
    extremal_indices,
    lemma_probe,
)
from .eigen import SpectralPair, dense_full_spectrum, orient, top2_symmetric  # noqa: E402
from .experiments import affinity_table, conjecture_scan, run_mc_error  # noqa: E402
from .graph import LabeledGraph, matvec, net_in_cluster  # noqa: E402
from .knn import DatasetMatrix, build_knn_graph, empirical_delta, flip_noise, synth_blobs  # noqa: E402
from .sbm import SbmParams, expectation_matrix, sample_sbm  # noqa: E402

__all__ = [
    "DatasetMatrix",
    "ErrorReport",
    "FiedlerDiagnostics",
    "LabeledGraph",
    "SbmParams",
    "SpectralPair",
    "affinity_table",
    "build_knn_graph",
    "classification_error",
    "compute_delta",
    "conjecture_scan",
    "corollary_fraction",
    "decompose_fiedler",
    "dense_full_spectrum",
    "empirical_delta",
    "error_report",
    "expectation_matrix",
    "extremal_indices",
    "flip_noise",
    "lemma_probe",
    "matvec",
    "net_in_cluster",
    "orient",
    "run_mc_error",
    "sample_sbm",
    "synth_blobs",
    "top2_symmetric",
]
