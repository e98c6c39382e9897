"""Command-line entry point: ``fiedler-hotspots <subcommand> ...``.

Exit status is 0 on success, 2 on usage errors and 1 on runtime failures.
Output headers echo the run configuration minus execution details
(``--workers`` and output paths), so identical configs give identical bytes.
"""

import argparse
import math
import sys

import numpy as np

from . import __version__
from .diagnostics import decompose_fiedler, error_report, lemma_probe
from .eigen import DEFAULT_TOL, top2_symmetric
from .errors import FiedlerError, TrialFailureError
from .experiments import affinity_table, conjecture_scan, run_mc_error
from .formats import csv_text, graph_text, labels_text, read_graph, read_labels
from .knn import binarize, build_knn_graph, flip_noise, read_dataset_csv, read_idx_pair, synth_blobs
from .sbm import SbmParams, sample_sbm


def _float_list(text):
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _int_list(text):
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _seed(text):
    val = int(text, 0)
    if not 0 <= val < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return val


def _emit(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="64-bit base seed (default 0)")
    common.add_argument("--out", default="-", help="output path ('-' = stdout)")
    common.add_argument("--workers", type=int, default=1, help="worker processes (output is unaffected)")

    parser = argparse.ArgumentParser(prog="fiedler-hotspots", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def sbm_args(p, required=True):
        p.add_argument("--n", type=int, required=required)
        p.add_argument("--p", type=float, required=required)
        p.add_argument("--q", type=float, required=required)

    s = sub.add_parser("sbm", parents=[common], help="sample an SBM graph and its labels")
    sbm_args(s)
    s.add_argument("--labels-out", help="labels path (default: <out>.labels)")

    s = sub.add_parser("analyze", parents=[common], help="Fiedler diagnostics for a labelled graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--labels", required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)

    s = sub.add_parser("mc", parents=[common], help="global vs extremal-subset error over SBM trials")
    sbm_args(s)
    s.add_argument("--trials", type=int, default=500)
    s.add_argument("--eps", type=_float_list, default=[0.05, 0.1, 0.2])
    s.add_argument("--eta", type=float, default=0.5)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)

    s = sub.add_parser("affinity", parents=[common], help="affinity surplus vs v2 table")
    sbm_args(s, required=False)
    s.add_argument("--graph")
    s.add_argument("--labels")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)

    s = sub.add_parser("scan-conjecture", parents=[common], help="sup-norm deviation of v2 across n")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--n-list", type=_int_list, default=[250, 500, 1000, 2000, 4000])
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)

    s = sub.add_parser("knn", parents=[common], help="k-NN graph from a labelled dataset")
    s.add_argument("--data", help="dataset CSV (last column = +/-1 label)")
    s.add_argument("--idx-images", help="IDX image file (MNIST format)")
    s.add_argument("--idx-labels", help="IDX label file")
    s.add_argument("--digits", type=_int_list, default=[3, 8], help="positive,negative digit")
    s.add_argument("--per-class", type=int, help="images drawn per digit")
    s.add_argument("--k-fraction", type=float, default=0.1)
    s.add_argument("--no-binarize", action="store_true", help="keep real-valued features")
    s.add_argument("--flip-rho", type=float, default=0.0, help="pixel-flip noise probability")
    s.add_argument("--labels-out", help="labels path (default: <out>.labels)")

    s = sub.add_parser("synth", parents=[common], help="generate binary two-prototype blobs")
    s.add_argument("--m-per-class", type=int, default=300)
    s.add_argument("--d", type=int, default=256)
    s.add_argument("--separation", type=float, default=0.5)
    s.add_argument("--flip", type=float, default=0.1)
    return parser


def _labels_path(args):
    if args.labels_out:
        return args.labels_out
    if args.out in (None, "-"):
        raise FiedlerError("--labels-out is required when writing the graph to stdout")
    return args.out + ".labels"


def cmd_sbm(args):
    params = SbmParams(args.n, args.p, args.q, args.seed)
    graph = sample_sbm(params)
    labels_path = _labels_path(args)
    _emit(args.out, graph_text(graph))
    _emit(labels_path, labels_text(graph.labels))
    return 0


def _analysis_rows(pair, diag, graph):
    for i in range(graph.n):
        yield (
            i,
            int(diag.labels[i]),
            pair.v1[i],
            pair.v2[i],
            diag.e2[i],
            diag.delta[i],
            diag.local_term[i],
            diag.theorem_residual[i],
        )


def cmd_analyze(args):
    graph = read_graph(args.graph, args.labels)
    pair = top2_symmetric(graph, tol=args.tol)
    diag = decompose_fiedler(pair, graph, args.p, args.q)
    report = error_report(pair.v2, graph.labels, [])
    config = {"graph": args.graph, "labels": args.labels, "p": args.p, "q": args.q, "tol": args.tol}
    extra = [
        ("lambda1", pair.lambda1),
        ("lambda2", pair.lambda2),
        ("residual1", pair.residual1),
        ("residual2", pair.residual2),
        ("iterations", pair.iterations),
        ("gap_warning", pair.gap_warning),
        ("global_shift", diag.global_shift),
        ("lambda2_dev", diag.lambda2_dev),
        ("e2_dot_g", diag.e2_dot_g),
        ("lemma_probe", lemma_probe(pair, graph)),
        ("global_error", report.global_error),
    ]
    extra += [(f"norm.{k}", v) for k, v in diag.norms.items()]
    cols = ["vertex", "label", "v1", "v2", "e2", "delta", "local_term", "theorem_residual"]
    _emit(args.out, csv_text("analyze", config, cols, _analysis_rows(pair, diag, graph), extra))
    return 0


def cmd_mc(args):
    params = SbmParams(args.n, args.p, args.q)
    config = {
        "n": args.n,
        "p": args.p,
        "q": args.q,
        "trials": args.trials,
        "eps": args.eps,
        "eta": args.eta,
        "seed": args.seed,
        "tol": args.tol,
    }
    status = 0
    try:
        summary = run_mc_error(
            params, args.eps, args.trials, args.seed, eta=args.eta, tol=args.tol, workers=args.workers
        )
    except TrialFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        summary = exc.summary
        status = 1
    cols = ["trial", "seed", "status"] + summary.columns
    rows = []
    for rec in summary.records:
        if rec.failed:
            rows.append([rec.trial, rec.seed, "failed"] + [""] * len(summary.columns))
        else:
            rows.append([rec.trial, rec.seed, "ok"] + [rec.values[c] for c in summary.columns])
    for stat in next(iter(summary.aggregates.values())):
        rows.append([stat, "", "aggregate"] + [summary.aggregates[c][stat] for c in summary.columns])
    extra = [("failures", summary.failures)]
    _emit(args.out, csv_text("mc", config, cols, rows, extra))
    return status


def cmd_affinity(args):
    if args.graph:
        if args.p is None or args.q is None or not args.labels:
            raise FiedlerError("affinity with --graph needs --labels, --p and --q")
        graph = read_graph(args.graph, args.labels)
        table = affinity_table(graph, p=args.p, q=args.q, tol=args.tol)
        config = {"graph": args.graph, "labels": args.labels, "p": args.p, "q": args.q, "tol": args.tol}
    else:
        if args.n is None or args.p is None or args.q is None:
            raise FiedlerError("affinity needs --n, --p and --q (or --graph)")
        table = affinity_table(SbmParams(args.n, args.p, args.q, args.seed), tol=args.tol)
        config = {"n": args.n, "p": args.p, "q": args.q, "seed": args.seed, "tol": args.tol}
    r = "undefined" if table.pearson_r is None else table.pearson_r
    rows = zip(table.vertex, table.rank, table.labels.astype(int), table.v2, table.affinity)
    cols = ["vertex", "rank", "label", "v2", "affinity"]
    _emit(args.out, csv_text("affinity", config, cols, rows, [("pearson_r_abs_v2", r)]))
    return 0


def cmd_scan(args):
    scan = conjecture_scan(args.p, args.q, args.n_list, args.trials, args.seed, tol=args.tol, workers=args.workers)
    config = {"p": args.p, "q": args.q, "n_list": args.n_list, "trials": args.trials, "seed": args.seed, "tol": args.tol}
    extra = [("fitted_exponent", scan.fitted_exponent), ("reference_exponent", scan.reference_exponent)]
    rows = zip(scan.n, scan.median_sup, scan.log_n_over_n, scan.ok_trials)
    cols = ["n", "median_sup_dev", "log_n_over_n", "trials_ok"]
    _emit(args.out, csv_text("scan-conjecture", config, cols, rows, extra))
    return 0


def cmd_knn(args):
    if bool(args.data) == bool(args.idx_images):
        raise FiedlerError("give exactly one of --data or --idx-images")
    if args.data:
        data = read_dataset_csv(args.data)
        source = {"data": args.data}
    else:
        if not args.idx_labels or len(args.digits) != 2:
            raise FiedlerError("--idx-images needs --idx-labels and two --digits")
        data = read_idx_pair(args.idx_images, args.idx_labels, args.digits[0], args.digits[1], args.per_class, args.seed)
        source = {"idx_images": args.idx_images, "idx_labels": args.idx_labels, "digits": args.digits}
    if not args.no_binarize and not data.is_binary:
        data = binarize(data)
    if args.flip_rho > 0:
        data = flip_noise(data, args.flip_rho, args.seed)
    graph = build_knn_graph(data, args.k_fraction)
    labels_path = _labels_path(args)
    _emit(args.out, graph_text(graph))
    _emit(labels_path, labels_text(graph.labels))
    return 0


def cmd_synth(args):
    data = synth_blobs(args.m_per_class, args.d, args.separation, args.flip, args.seed)
    config = {
        "m_per_class": args.m_per_class,
        "d": args.d,
        "separation": args.separation,
        "flip": args.flip,
        "seed": args.seed,
    }
    cols = [f"x{k}" for k in range(data.d)] + ["label"]
    rows = (list(r) + [int(l)] for r, l in zip(data.rows.astype(np.int64).tolist(), data.labels))
    _emit(args.out, csv_text("synth", config, cols, rows))
    return 0


COMMANDS = {
    "sbm": cmd_sbm,
    "analyze": cmd_analyze,
    "mc": cmd_mc,
    "affinity": cmd_affinity,
    "scan-conjecture": cmd_scan,
    "knn": cmd_knn,
    "synth": cmd_synth,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (FiedlerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
