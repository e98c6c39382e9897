"""Seeded Monte-Carlo experiments over SBM samples.

Every trial is a pure function of its parameters and its derived seed
(:func:`fiedler_hotspots.rng.trial_seed`), and results are gathered in trial
order, so output does not depend on ``workers``.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import corollary_fraction, decompose_fiedler, error_report, lemma_probe
from .eigen import DEFAULT_TOL, top2_symmetric
from .errors import ConvergenceError, ParameterError, PreconditionError, TrialFailureError
from .rng import substream_seed, trial_seed
from .sbm import SbmParams, sample_sbm

MAX_FAILURE_RATE = 0.01
QUANTILES = (0.05, 0.25, 0.75, 0.95)


def _pool_map(fn, tasks, workers):
    if workers is None or workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


def _eps_key(eps):
    return f"{eps:g}"


def mc_columns(eps_list):
    cols = ["global_error"]
    cols += [f"subset_error_{_eps_key(e)}" for e in eps_list]
    cols += [f"corollary_pos_{_eps_key(e)}" for e in eps_list]
    cols += [f"corollary_neg_{_eps_key(e)}" for e in eps_list]
    cols += ["lemma_probe", "residual_norm", "lambda2", "lambda2_dev", "iterations"]
    return cols


def mc_trial(params, eps_list, eta=0.5, tol=DEFAULT_TOL):
    """One trial at ``params.seed``: sample, solve, score. Returns a column dict."""
    graph = sample_sbm(params)
    pair = top2_symmetric(graph, tol=tol)
    report = error_report(pair.v2, graph.labels, eps_list)
    diag = decompose_fiedler(pair, graph, params.p, params.q)
    row = {"global_error": report.global_error}
    for e in eps_list:
        row[f"subset_error_{_eps_key(e)}"] = report.subset_errors[e]
    for e in eps_list:
        pos, neg = corollary_fraction(diag, e, eta)
        row[f"corollary_pos_{_eps_key(e)}"] = pos
        row[f"corollary_neg_{_eps_key(e)}"] = neg
    row["lemma_probe"] = lemma_probe(pair, graph)
    row["residual_norm"] = diag.residual_norm
    row["lambda2"] = pair.lambda2
    row["lambda2_dev"] = diag.lambda2_dev
    row["iterations"] = pair.iterations
    return row


def _mc_task(task):
    n, p, q, seed, eps_list, eta, tol = task
    try:
        return mc_trial(SbmParams(n, p, q, seed), eps_list, eta, tol)
    except ConvergenceError as exc:
        return {"failed": str(exc)}


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    values: dict | None
    failure: str | None = None

    @property
    def failed(self):
        return self.values is None


@dataclass(frozen=True)
class McSummary:
    n: int
    p: float
    q: float
    eps_list: tuple
    eta: float
    base_seed: int
    trials: int
    records: list
    columns: list
    aggregates: dict = field(default_factory=dict)

    @property
    def failures(self):
        return sum(r.failed for r in self.records)

    def column(self, name):
        return np.array([r.values[name] for r in self.records if not r.failed], dtype=float)

    def mean(self, name):
        return self.aggregates[name]["mean"]


def aggregate(records, columns):
    out = {}
    for name in columns:
        vals = np.array([r.values[name] for r in records if not r.failed], dtype=float)
        vals = vals[~np.isnan(vals)]
        if vals.size == 0:
            out[name] = {k: math.nan for k in ("mean", "median", *(f"q{int(100 * x):02d}" for x in QUANTILES))}
            continue
        stats = {"mean": float(vals.mean()), "median": float(np.median(vals))}
        for x in QUANTILES:
            stats[f"q{int(100 * x):02d}"] = float(np.quantile(vals, x))
        out[name] = stats
    return out


def run_mc_error(params, eps_list, trials, base_seed=0, *, eta=0.5, tol=DEFAULT_TOL, workers=1):
    """Global vs extremal-subset sign-classification error over many SBM draws.

    ``params.seed`` is ignored; trial ``t`` uses ``trial_seed(base_seed, t)``.
    Trials whose eigensolve fails are recorded and excluded from the
    aggregates; more than 1% failures raises :class:`TrialFailureError`.
    """
    eps_list = tuple(float(e) for e in eps_list)
    if not eps_list or any(not 0.0 < e <= 1.0 for e in eps_list):
        raise ParameterError("eps_list must be non-empty with entries in (0, 1]")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    seeds = [trial_seed(base_seed, t) for t in range(trials)]
    tasks = [(params.n, params.p, params.q, s, eps_list, eta, tol) for s in seeds]
    results = _pool_map(_mc_task, tasks, workers)
    records = [
        TrialRecord(t, s, None, r["failed"]) if "failed" in r else TrialRecord(t, s, r)
        for t, (s, r) in enumerate(zip(seeds, results))
    ]
    columns = mc_columns(eps_list)
    summary = McSummary(
        n=params.n,
        p=params.p,
        q=params.q,
        eps_list=eps_list,
        eta=eta,
        base_seed=int(base_seed),
        trials=trials,
        records=records,
        columns=columns,
        aggregates=aggregate(records, columns),
    )
    if summary.failures > MAX_FAILURE_RATE * trials:
        raise TrialFailureError(
            f"{summary.failures} of {trials} trials failed (limit {MAX_FAILURE_RATE:.0%})", summary
        )
    return summary


@dataclass(frozen=True, eq=False)
class AffinityTable:
    """Vertices sorted by ascending v2, with their normalised affinity surplus.

    ``affinity[i] = (d_i - E d_i) / sqrt(n)`` where ``d_i`` is in-minus-out
    neighbour count. ``pearson_r`` correlates it with ``|v2|`` and is None
    when either is constant.
    """

    vertex: np.ndarray
    rank: np.ndarray
    v2: np.ndarray
    affinity: np.ndarray
    labels: np.ndarray
    pearson_r: float | None

    @property
    def degenerate(self):
        return self.pearson_r is None

    def __len__(self):
        return self.vertex.shape[0]


def pearson(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = math.sqrt(float(np.dot(dx, dx)))
    sy = math.sqrt(float(np.dot(dy, dy)))
    # constant up to rounding counts as constant
    if sx <= 1e-12 * (abs(x).max() + 1e-300) * math.sqrt(x.size) or sy <= 1e-12 * (abs(y).max() + 1e-300) * math.sqrt(y.size):
        return None
    return float(np.dot(dx, dy) / (sx * sy))


def affinity_rows(v2, affinity, labels):
    v2 = np.asarray(v2, dtype=float)
    order = np.argsort(v2, kind="stable")
    return AffinityTable(
        vertex=order,
        rank=np.arange(v2.shape[0]),
        v2=v2[order],
        affinity=np.asarray(affinity, dtype=float)[order],
        labels=np.asarray(labels)[order],
        pearson_r=pearson(affinity, np.abs(v2)),
    )


def affinity_table(source, seed=None, *, p=None, q=None, tol=DEFAULT_TOL):
    """Affinity surplus against v2 for an SBM draw or a labelled graph.

    ``source`` is :class:`SbmParams` (sampled at ``seed``, default
    ``source.seed``) or a labelled graph together with ``p`` and ``q``.
    """
    if isinstance(source, SbmParams):
        params = source if seed is None else source.with_seed(seed)
        graph = sample_sbm(params)
        p, q = params.p, params.q
    else:
        graph = source
        if p is None or q is None:
            raise PreconditionError("p and q are required with an explicit graph")
        graph.require_labels()
    pair = top2_symmetric(graph, tol=tol)
    diag = decompose_fiedler(pair, graph, p, q)
    return affinity_rows(pair.v2, diag.surplus / math.sqrt(graph.n), graph.labels)


def _sup_task(task):
    n, p, q, seed, tol = task
    graph = sample_sbm(SbmParams(n, p, q, seed))
    try:
        pair = top2_symmetric(graph, tol=tol)
    except ConvergenceError:
        return math.nan
    g = graph.labels.astype(float)
    return float(np.abs(pair.v2 - g / math.sqrt(n)).max())


@dataclass(frozen=True)
class ConjectureScan:
    p: float
    q: float
    base_seed: int
    trials_per_n: int
    n: list
    median_sup: list
    log_n_over_n: list
    ok_trials: list
    fitted_exponent: float
    reference_exponent: float


def loglog_slope(x, y):
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


def conjecture_scan(p, q, n_list, trials_per_n, base_seed=0, *, tol=DEFAULT_TOL, workers=1):
    """Median ``||v2 - g/sqrt(n)||_inf`` per ``n`` and its log-log slope.

    ``reference_exponent`` is the slope of ``log(n)/n`` over the same ``n``.
    """
    n_list = [int(n) for n in n_list]
    if not n_list or any(n < 100 or n % 2 for n in n_list):
        raise ParameterError("every n must be even and >= 100")
    if trials_per_n < 1:
        raise ParameterError("trials_per_n must be >= 1")
    SbmParams(n_list[0], p, q)
    tasks = []
    for n in n_list:
        base = substream_seed(base_seed, n)
        tasks += [(n, p, q, trial_seed(base, t), tol) for t in range(trials_per_n)]
    sups = np.array(_pool_map(_sup_task, tasks, workers)).reshape(len(n_list), trials_per_n)
    medians, ok = [], []
    for row in sups:
        good = row[~np.isnan(row)]
        if good.size < (1 - MAX_FAILURE_RATE) * trials_per_n:
            raise TrialFailureError(f"too many eigensolver failures: {trials_per_n - good.size}")
        medians.append(float(np.median(good)))
        ok.append(int(good.size))
    ref = [math.log(n) / n for n in n_list]
    fit = loglog_slope(n_list, medians) if len(n_list) > 1 else math.nan
    ref_fit = loglog_slope(n_list, ref) if len(n_list) > 1 else math.nan
    return ConjectureScan(p, q, int(base_seed), trials_per_n, n_list, medians, ref, ok, fit, ref_fit)
