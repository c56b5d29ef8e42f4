"""Nonparametric comparison of metric distributions.

Implements the Mann-Whitney U test (exact and normal-approximation modes),
the per-metric significance-win predicate, direction-based win sets,
per-function verdicts, total-performance counts, and the p-value histogram
partition used for drill-down reporting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateFunction,
    ExactModeWithTies,
    MismatchedSamples,
    MissingMetric,
    SampleTooSmall,
)
from .metrics import METRIC_NAMES

DEFAULT_ALPHA = 0.01

#: p-value bin edges; bins are left-closed, the last bin is closed on both
#: sides.  The first edge equals the default significance level so the
#: "most significant bin" is exactly the rejection region.
PVALUE_BIN_EDGES = (0.0, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0)

A_HIGHER = "a_higher"
B_HIGHER = "b_higher"
EQUAL_MEANS = "equal_means"

WIN = "win"
LOSE = "lose"
TIE = "tie"
MIXED = "mixed"
CATEGORIES = (WIN, LOSE, TIE, MIXED)


@dataclass(frozen=True)
class MetricSample:
    """Empirical distribution of one metric for one (method, function) pair."""

    method_id: str
    function_id: str
    metric_name: str
    values: tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))


@dataclass(frozen=True)
class ComparisonOutcome:
    """One Mann-Whitney comparison between methods A and B on one metric."""

    function_id: str
    metric_name: str
    mean_a: float
    mean_b: float
    u_statistic: float
    p_value: float
    direction: str
    significant: bool


@dataclass(frozen=True)
class FunctionVerdict:
    """Per-function category aggregating every metric's outcome."""

    function_id: str
    category: str
    per_metric: tuple[ComparisonOutcome, ...]


@dataclass(frozen=True)
class TotalPerformance:
    wins: int
    loses: int
    ties: int
    mixed: int

    @property
    def total(self) -> int:
        return self.wins + self.loses + self.ties + self.mixed

    def as_dict(self) -> dict[str, int]:
        return {
            "wins": self.wins,
            "loses": self.loses,
            "ties": self.ties,
            "mixed": self.mixed,
        }


def _average_ranks(pooled: np.ndarray) -> np.ndarray:
    """Midranks: tied values receive the mean of the ranks they occupy."""
    order = np.argsort(pooled, kind="mergesort")
    ranks = np.empty(pooled.size, dtype=float)
    sorted_vals = pooled[order]
    i = 0
    while i < pooled.size:
        j = i
        while j + 1 < pooled.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        # ranks are 1-based; ties share the average of positions i..j
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _tie_counts(pooled: np.ndarray) -> list[int]:
    _, counts = np.unique(pooled, return_counts=True)
    return counts.tolist()


@lru_cache(maxsize=None)
def _u_counts(m: int, n: int) -> tuple[int, ...]:
    """Number of rank arrangements attaining each U value for sizes (m, n).

    Standard recurrence N(u; m, n) = N(u - n; m - 1, n) + N(u; m, n - 1);
    index u runs over 0..m*n and the counts sum to C(m + n, m).
    """
    if m == 0 or n == 0:
        return (1,)
    shrink_m = _u_counts(m - 1, n)
    shrink_n = _u_counts(m, n - 1)
    out = []
    for u in range(m * n + 1):
        total = 0
        if 0 <= u - n <= (m - 1) * n:
            total += shrink_m[u - n]
        if u <= m * (n - 1):
            total += shrink_n[u]
        out.append(total)
    return tuple(out)


def _exact_pvalue(u_a: float, n_a: int, n_b: int) -> float:
    """Two-sided exact p: doubled upper tail of max(U_A, U_B), clipped to 1."""
    counts = _u_counts(n_a, n_b)
    u_big = max(u_a, n_a * n_b - u_a)
    lo = math.ceil(u_big - 1e-9)
    tail = sum(counts[lo:])
    p = 2.0 * tail / math.comb(n_a + n_b, n_a)
    return min(1.0, p)


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _approx_pvalue(u_a: float, n_a: int, n_b: int, pooled: np.ndarray) -> float:
    """Normal approximation with tie-corrected variance and 0.5 continuity."""
    n = n_a + n_b
    tie_term = sum(t**3 - t for t in _tie_counts(pooled))
    variance = (n_a * n_b / 12.0) * ((n + 1.0) - tie_term / (n * (n - 1.0)))
    if variance <= 0.0:
        # all pooled values identical: degenerate, nothing to distinguish
        return 1.0
    mean = n_a * n_b / 2.0
    u_big = max(u_a, n_a * n_b - u_a)
    z = (u_big - mean - 0.5) / math.sqrt(variance)
    return min(1.0, max(0.0, 2.0 * _normal_sf(z)))


def mann_whitney_u(
    sample_a: Sequence[float],
    sample_b: Sequence[float],
    mode: str = "auto",
) -> tuple[float, float]:
    """Two-sided Mann-Whitney U test.

    Returns (U_A, p).  U_A is the rank-sum statistic for ``sample_a`` with
    midranks for ties, so U_A + U_B = n_a * n_b always holds.  ``mode`` is
    one of "exact", "approximate", or "auto"; auto picks the exact
    permutation distribution when the samples are tie-free and the smaller
    one has at most 10 values, and the normal approximation otherwise.
    """
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    n_a, n_b = a.size, b.size
    if n_a < 2 or n_b < 2:
        raise SampleTooSmall(f"need >= 2 values per sample, got {n_a} and {n_b}")
    if mode not in ("exact", "approximate", "auto"):
        raise ValueError(f"unknown mode {mode!r}")

    pooled = np.concatenate([a, b])
    ranks = _average_ranks(pooled)
    u_a = float(ranks[:n_a].sum() - n_a * (n_a + 1) / 2.0)

    has_ties = np.unique(pooled).size < pooled.size
    if mode == "exact" and has_ties:
        raise ExactModeWithTies("exact mode requires tie-free samples")
    if mode == "auto":
        mode = "exact" if not has_ties and min(n_a, n_b) <= 10 else "approximate"

    if mode == "exact":
        p = _exact_pvalue(u_a, n_a, n_b)
    else:
        p = _approx_pvalue(u_a, n_a, n_b, pooled)
    return u_a, p


def compare_samples(
    a: MetricSample, b: MetricSample, alpha: float = DEFAULT_ALPHA
) -> ComparisonOutcome:
    """Build the full comparison outcome for one (function, metric) pair."""
    if a.function_id != b.function_id or a.metric_name != b.metric_name:
        raise MismatchedSamples(
            f"samples describe ({a.function_id}, {a.metric_name}) "
            f"vs ({b.function_id}, {b.metric_name})"
        )
    u_a, p = mann_whitney_u(a.values, b.values, mode="auto")
    mean_a, mean_b = a.mean, b.mean
    if mean_a > mean_b:
        direction = A_HIGHER
    elif mean_b > mean_a:
        direction = B_HIGHER
    else:
        direction = EQUAL_MEANS
    return ComparisonOutcome(
        function_id=a.function_id,
        metric_name=a.metric_name,
        mean_a=mean_a,
        mean_b=mean_b,
        u_statistic=u_a,
        p_value=p,
        direction=direction,
        significant=p <= alpha,
    )


def signf_win(a: MetricSample, b: MetricSample, alpha: float = DEFAULT_ALPHA) -> bool:
    """True iff A's sample mean is higher and the U test rejects at alpha."""
    outcome = compare_samples(a, b, alpha)
    return outcome.direction == A_HIGHER and outcome.significant


def win_sets(
    outcomes: Iterable[ComparisonOutcome],
) -> tuple[set[str], set[str]]:
    """Partition functions by sample-mean direction, ignoring significance.

    Functions with exactly equal means belong to neither set.
    """
    wins_a: set[str] = set()
    wins_b: set[str] = set()
    seen: set[str] = set()
    for outcome in outcomes:
        if outcome.function_id in seen:
            raise DuplicateFunction(outcome.function_id)
        seen.add(outcome.function_id)
        if outcome.direction == A_HIGHER:
            wins_a.add(outcome.function_id)
        elif outcome.direction == B_HIGHER:
            wins_b.add(outcome.function_id)
    return wins_a, wins_b


def classify(
    per_metric: Sequence[ComparisonOutcome],
    alpha: float = DEFAULT_ALPHA,
    metric_names: Sequence[str] = METRIC_NAMES,
) -> FunctionVerdict:
    """Aggregate one function's per-metric outcomes into a verdict.

    With S+ the metrics significantly favoring A and S- those favoring B:
    win if S+ nonempty and S- empty, lose for the mirror image, mixed if
    both are nonempty, tie if both are empty.  The four cases are disjoint
    and exhaustive.
    """
    present = {o.metric_name for o in per_metric}
    missing = set(metric_names) - present
    if missing:
        raise MissingMetric(f"missing outcomes for {sorted(missing)}")
    function_ids = {o.function_id for o in per_metric}
    if len(function_ids) != 1:
        raise MismatchedSamples(f"outcomes span functions {sorted(function_ids)}")

    improved = any(
        o.p_value <= alpha and o.direction == A_HIGHER for o in per_metric
    )
    declined = any(
        o.p_value <= alpha and o.direction == B_HIGHER for o in per_metric
    )
    if improved and declined:
        category = MIXED
    elif improved:
        category = WIN
    elif declined:
        category = LOSE
    else:
        category = TIE
    return FunctionVerdict(
        function_id=function_ids.pop(),
        category=category,
        per_metric=tuple(per_metric),
    )


def total_performance(verdicts: Iterable[FunctionVerdict]) -> TotalPerformance:
    """Count verdicts by category; the counts partition the function set."""
    tally = {c: 0 for c in CATEGORIES}
    for verdict in verdicts:
        tally[verdict.category] += 1
    return TotalPerformance(
        wins=tally[WIN], loses=tally[LOSE], ties=tally[TIE], mixed=tally[MIXED]
    )


def _bin_index(p: float, edges: Sequence[float] = PVALUE_BIN_EDGES) -> int:
    """Left-closed bins; the final bin also contains its right edge."""
    for i in range(len(edges) - 2):
        if edges[i] <= p < edges[i + 1]:
            return i
    return len(edges) - 2


def pvalue_histogram(
    outcomes: Iterable[ComparisonOutcome],
    edges: Sequence[float] = PVALUE_BIN_EDGES,
) -> tuple[list[list[str]], list[list[str]]]:
    """Split one metric's outcomes by mean direction and bin them by p-value.

    Returns (bins_a, bins_b): per-bin lists of function ids, so a reporting
    layer can resolve every bin member back to its traces.  Equal-means
    functions appear in neither histogram.
    """
    n_bins = len(edges) - 1
    bins_a: list[list[str]] = [[] for _ in range(n_bins)]
    bins_b: list[list[str]] = [[] for _ in range(n_bins)]
    seen: set[str] = set()
    for outcome in outcomes:
        if outcome.function_id in seen:
            raise DuplicateFunction(outcome.function_id)
        seen.add(outcome.function_id)
        if outcome.direction == EQUAL_MEANS:
            continue
        target = bins_a if outcome.direction == A_HIGHER else bins_b
        target[_bin_index(outcome.p_value, edges)].append(outcome.function_id)
    for bucket in bins_a:
        bucket.sort()
    for bucket in bins_b:
        bucket.sort()
    return bins_a, bins_b
