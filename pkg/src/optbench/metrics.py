"""Best-seen traces and the two per-run performance metrics.

All objectives are maximized, so the best-seen trace is a running maximum
and both metrics grow with better performance.  AUC is the mean of the
best-seen step function over the budget, which keeps it comparable across
budgets and never above the final best value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyRun, LengthMismatch, NonFiniteValue

METRIC_NAMES = ("best_found", "auc")


@dataclass(frozen=True)
class BestSeenTrace:
    """Running maximum of raw objective values, one entry per evaluation."""

    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def final(self) -> float:
        return self.values[-1]


@dataclass(frozen=True)
class MetricVector:
    best_found: float
    auc: float

    def as_dict(self) -> dict[str, float]:
        return {"best_found": self.best_found, "auc": self.auc}


def best_seen_trace(raw: Sequence[float]) -> BestSeenTrace:
    """Running maximum of ``raw``: values[i] = max(raw[0..i])."""
    arr = np.asarray(raw, dtype=float)
    if arr.size == 0:
        raise EmptyRun("cannot build a trace from zero evaluations")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue("objective values must be finite")
    return BestSeenTrace(tuple(np.maximum.accumulate(arr).tolist()))


def extend_to_budget(trace: BestSeenTrace, budget: int) -> BestSeenTrace:
    """Right-extend an early-stopped trace with its final value.

    Keeps traces from truncated runs comparable with full-budget ones; a
    full-length trace is returned unchanged.
    """
    if len(trace) >= budget:
        return trace
    pad = (trace.final,) * (budget - len(trace))
    return BestSeenTrace(trace.values + pad)


def compute_metrics(trace: BestSeenTrace) -> MetricVector:
    """Final best value plus mean of the best-seen step function."""
    values = np.asarray(trace.values)
    return MetricVector(best_found=float(values[-1]), auc=float(values.mean()))


def trace_quantiles(
    traces: Iterable[BestSeenTrace],
) -> tuple[BestSeenTrace, BestSeenTrace, BestSeenTrace]:
    """Pointwise (median, q25, q75) across equal-length traces.

    Quantiles interpolate linearly between order statistics, so the bands
    are continuous in the underlying data.
    """
    rows = [t.values for t in traces]
    if not rows:
        raise EmptyRun("need at least one trace")
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise LengthMismatch(f"traces have mixed lengths {sorted(lengths)}")
    mat = np.asarray(rows, dtype=float)
    q25, med, q75 = np.quantile(mat, [0.25, 0.5, 0.75], axis=0)
    return (
        BestSeenTrace(tuple(med.tolist())),
        BestSeenTrace(tuple(q25.tolist())),
        BestSeenTrace(tuple(q75.tolist())),
    )
