"""Accuracy and timing metrics for oracle evaluation."""

from __future__ import annotations

import logging
import math
import time
import warnings
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from ..hypercore import Hypergraph
from ..linegraph import ExactOracle
from ..oracle import UNCOVERED, Oracle, estimate_h2h, estimate_v2e, estimate_v2v
from .queries import QueryBatch

log = logging.getLogger(__name__)

L1_LEVELS = (0.0, 0.25, 0.5, 0.75, 0.9, 1.0)


@dataclass
class EvalReport:
    mae: float
    rmse: float
    time_per_query_us: float
    off_seconds: float | None
    l1_quantiles: dict[str, float]
    coverage_rate: float
    reach_error_rate: float
    n_queries: int = 0
    n_scored: int = 0
    status_counts: dict[str, int] = field(default_factory=dict)
    rows: list[tuple] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("rows")
        for k in ("mae", "rmse", "time_per_query_us"):
            if isinstance(d[k], float) and math.isnan(d[k]):
                d[k] = None
        return d


def _query_fns(o: Oracle, h: Hypergraph, truth: ExactOracle):
    return {
        "hh": (lambda a, b, s: estimate_h2h(o, a, b, s), truth.h2h),
        "vv": (lambda a, b, s: estimate_v2v(o, h, a, b, s), truth.v2v),
        "ve": (lambda a, b, s: estimate_v2e(o, h, a, b, s), truth.v2e),
    }


def evaluate(o: Oracle, h: Hypergraph, batch: QueryBatch, truth: ExactOracle | None = None) -> EvalReport:
    """Score oracle estimates against exact distances.

    MAE/RMSE use pairs where both values are finite.  Exactly-one-infinite
    pairs count towards ``reach_error_rate``; both-infinite pairs are correct.
    ``coverage_rate`` is the share of queries that hit the uncovered case.
    Only the oracle calls are timed.
    """
    truth = truth or ExactOracle(h)
    fns = _query_fns(o, h, truth)
    queries = batch.queries
    estimates = []
    t0 = time.perf_counter()
    for q in queries:
        estimates.append(fns[q.kind][0](q.source, q.target, q.s))
    elapsed = time.perf_counter() - t0
    errors = []
    reach_err = 0
    status_counts: dict[str, int] = {}
    rows = []
    for q, est in zip(queries, estimates):
        true = fns[q.kind][1](q.source, q.target, q.s)
        status_counts[est.status] = status_counts.get(est.status, 0) + 1
        fin_est, fin_true = not math.isinf(est.estimate), not math.isinf(true)
        if fin_est and fin_true:
            errors.append(abs(est.estimate - true))
        elif fin_est != fin_true:
            reach_err += 1
        rows.append((q.source, q.target, q.s, true, est.lb, est.ub, est.estimate, est.status))
    n = len(queries)
    if errors:
        err = np.array(errors, dtype=float)
        mae = float(err.mean())
        rmse = float(math.sqrt((err ** 2).mean()))
        l1 = {f"{p:g}": float(v) for p, v in zip(L1_LEVELS, np.quantile(err, L1_LEVELS))}
    else:
        mae = rmse = float("nan")
        l1 = {}
        msg = "no query with finite estimate and finite truth; MAE/RMSE undefined"
        log.warning(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    return EvalReport(
        mae=mae,
        rmse=rmse,
        time_per_query_us=elapsed / n * 1e6 if n else float("nan"),
        off_seconds=o.report.get("off_seconds"),
        l1_quantiles=l1,
        coverage_rate=status_counts.get(UNCOVERED, 0) / n if n else 0.0,
        reach_error_rate=reach_err / n if n else 0.0,
        n_queries=n,
        n_scored=len(errors),
        status_counts=status_counts,
        rows=rows,
    )


class ErrorRatios(NamedTuple):
    mape: float
    lar: float
    excluded_mape: int
    excluded_lar: int


def mape_lar(estimates: Sequence[float], truths: Sequence[float]) -> ErrorRatios:
    """Mean absolute percentage error and sum of squared log accuracy ratios.

    MAPE skips pairs with ``true <= 0``; LAR skips pairs where either side
    is not strictly positive.  Both skip infinite values.
    """
    if len(estimates) != len(truths):
        raise ValueError("estimates and truths differ in length")
    pct, logs = [], []
    ex_m = ex_l = 0
    for est, true in zip(estimates, truths):
        finite = math.isfinite(est) and math.isfinite(true)
        if finite and true > 0:
            pct.append(abs(est - true) / true)
        else:
            ex_m += 1
        if finite and true > 0 and est > 0:
            logs.append(math.log(est / true) ** 2)
        else:
            ex_l += 1
    mape = sum(pct) / len(pct) if pct else float("nan")
    return ErrorRatios(mape, math.fsum(logs), ex_m, ex_l)


def avep_at_k(ranked_est: Sequence, ranked_true: Sequence[tuple], k: int) -> float:
    """Average precision of the estimated top-k against the exact top-k.

    ``ranked_true`` holds ``(id, distance)`` in ascending distance.  Any
    candidate tied with the k-th exact distance counts as relevant.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    kk = min(k, len(ranked_true))
    if kk == 0:
        return 1.0 if not ranked_est else 0.0
    cutoff = ranked_true[kk - 1][1]
    relevant = {x for x, d in ranked_true if d <= cutoff}
    hits = 0
    total = 0.0
    for i, x in enumerate(ranked_est[:k]):
        if x in relevant:
            hits += 1
            total += hits / (i + 1)
    return total / kk
