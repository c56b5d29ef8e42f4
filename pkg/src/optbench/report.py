"""Aggregate a campaign archive into a pairwise comparison bundle.

The bundle is plain JSON-shaped data: per-function trace quantile bands,
per-metric Mann-Whitney outcomes, verdicts, p-value histograms with
clickable membership lists, and the total-performance counts.  It is the
single contract between the harness and any presentation layer: the CLI's
text table, the CSV export, and the static dashboard all read it as-is.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .errors import IoFailure, NoComparableFunctions, UnknownMethod
from .metrics import METRIC_NAMES, extend_to_budget, trace_quantiles
from .runner import COMPLETED, CampaignArchive, RunRecord
from .stats import (
    PVALUE_BIN_EDGES,
    ComparisonOutcome,
    MetricSample,
    TotalPerformance,
    classify,
    compare_samples,
    pvalue_histogram,
    total_performance,
)

REPORT_SCHEMA_VERSION = "1"


@dataclass
class ReportBundle:
    schema_version: str
    fingerprint: str
    method_a: str
    method_b: str
    label_a: str
    label_b: str
    alpha: float
    budget: int
    metric_names: tuple[str, ...]
    per_function: dict[str, dict]
    histograms: dict[str, dict]
    totals: TotalPerformance
    exclusions: list[dict]

    def to_json_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "fingerprint": self.fingerprint,
            "pair": {
                "method_a": self.method_a,
                "method_b": self.method_b,
                "label_a": self.label_a,
                "label_b": self.label_b,
            },
            "alpha": self.alpha,
            "budget": self.budget,
            "metrics": list(self.metric_names),
            "per_function": self.per_function,
            "histograms": self.histograms,
            "totals": self.totals.as_dict(),
            "exclusions": self.exclusions,
        }

    @classmethod
    def from_json_dict(cls, doc: Mapping[str, Any]) -> "ReportBundle":
        totals = doc["totals"]
        return cls(
            schema_version=doc["schema_version"],
            fingerprint=doc["fingerprint"],
            method_a=doc["pair"]["method_a"],
            method_b=doc["pair"]["method_b"],
            label_a=doc["pair"]["label_a"],
            label_b=doc["pair"]["label_b"],
            alpha=doc["alpha"],
            budget=doc["budget"],
            metric_names=tuple(doc["metrics"]),
            per_function=dict(doc["per_function"]),
            histograms=dict(doc["histograms"]),
            totals=TotalPerformance(**totals),
            exclusions=list(doc["exclusions"]),
        )


def _outcome_json(outcome: ComparisonOutcome) -> dict:
    return {
        "mean_a": outcome.mean_a,
        "mean_b": outcome.mean_b,
        "u_statistic": outcome.u_statistic,
        "p_value": outcome.p_value,
        "direction": outcome.direction,
        "significant": outcome.significant,
    }


def _completed_records(
    archive: CampaignArchive, method_id: str, function_id: str
) -> tuple[list[RunRecord], str | None]:
    records = archive.records_for(method_id, function_id)
    failed = [r for r in records if r.status != COMPLETED]
    if failed:
        return [], f"method {method_id}: {len(failed)} failed run(s)"
    completed = [r for r in records if r.status == COMPLETED]
    if len(completed) < 2:
        return [], f"method {method_id}: only {len(completed)} completed run(s)"
    return completed, None


def build_report(
    archive: CampaignArchive,
    method_a: str,
    method_b: str,
    alpha: float | None = None,
) -> ReportBundle:
    """Compare two archived methods across every comparable function."""
    config = archive.config
    alpha = config.alpha if alpha is None else float(alpha)
    known = set(archive.method_ids())
    for method in (method_a, method_b):
        if method not in known:
            raise UnknownMethod(f"{method!r} not in archive methods {sorted(known)}")
    labels = {m.method_id: m.version_label for m in config.methods}

    per_function: dict[str, dict] = {}
    verdicts = []
    outcomes_by_metric: dict[str, list[ComparisonOutcome]] = {
        name: [] for name in METRIC_NAMES
    }
    exclusions: list[dict] = []
    for fid in config.function_ids:
        records: dict[str, list[RunRecord]] = {}
        reason = None
        for method in dict.fromkeys((method_a, method_b)):
            completed, reason = _completed_records(archive, method, fid)
            if reason:
                break
            records[method] = completed
        if reason:
            exclusions.append({"function_id": fid, "reason": reason})
            continue

        entry: dict[str, Any] = {"traces": {}, "runs": {}, "outcomes": {}}
        for method, recs in records.items():
            extended = [extend_to_budget(r.trace, config.budget) for r in recs]
            med, q25, q75 = trace_quantiles(extended)
            entry["traces"][method] = {
                "median": list(med.values),
                "q25": list(q25.values),
                "q75": list(q75.values),
            }
            entry["runs"][method] = [r.metrics.as_dict() for r in recs]

        function_outcomes = []
        for metric in METRIC_NAMES:
            sample_a = MetricSample(
                method_a, fid, metric,
                tuple(r.metrics.as_dict()[metric] for r in records[method_a]),
            )
            sample_b = MetricSample(
                method_b, fid, metric,
                tuple(r.metrics.as_dict()[metric] for r in records[method_b]),
            )
            outcome = compare_samples(sample_a, sample_b, alpha)
            function_outcomes.append(outcome)
            outcomes_by_metric[metric].append(outcome)
            entry["outcomes"][metric] = _outcome_json(outcome)

        verdict = classify(function_outcomes, alpha)
        verdicts.append(verdict)
        entry["verdict"] = verdict.category
        per_function[fid] = entry

    if not per_function:
        raise NoComparableFunctions(
            f"no function has two usable methods: {[e['reason'] for e in exclusions]}"
        )

    histograms = {}
    for metric in METRIC_NAMES:
        bins_a, bins_b = pvalue_histogram(outcomes_by_metric[metric])
        histograms[metric] = {
            "edges": list(PVALUE_BIN_EDGES),
            "a_bins": bins_a,
            "b_bins": bins_b,
        }

    return ReportBundle(
        schema_version=REPORT_SCHEMA_VERSION,
        fingerprint=archive.fingerprint,
        method_a=method_a,
        method_b=method_b,
        label_a=labels[method_a],
        label_b=labels[method_b],
        alpha=alpha,
        budget=config.budget,
        metric_names=tuple(METRIC_NAMES),
        per_function=per_function,
        histograms=histograms,
        totals=total_performance(verdicts),
        exclusions=exclusions,
    )


def _significant_win_counts(bundle: ReportBundle) -> dict[str, tuple[int, int]]:
    counts = {}
    for metric in bundle.metric_names:
        a = b = 0
        for entry in bundle.per_function.values():
            outcome = entry["outcomes"][metric]
            if outcome["significant"] and outcome["direction"] == "a_higher":
                a += 1
            elif outcome["significant"] and outcome["direction"] == "b_higher":
                b += 1
        counts[metric] = (a, b)
    return counts


def render_text_summary(bundle: ReportBundle) -> str:
    """Table in the transposed total-performance layout, one pair per column."""
    header = f"{bundle.label_a} (A) vs {bundle.label_b} (B)"
    lines = [
        f"Total performance: {header}",
        f"alpha = {bundle.alpha:g}, {len(bundle.per_function)} functions compared, "
        f"{len(bundle.exclusions)} excluded",
        "",
        f"  {'':<12}{header:>28}",
    ]
    for name, count in (
        ("Wins", bundle.totals.wins),
        ("Loses", bundle.totals.loses),
        ("Ties", bundle.totals.ties),
        ("Mixed", bundle.totals.mixed),
    ):
        lines.append(f"  {name:<12}{count:>28}")
    lines.append("")
    lines.append("Significant wins by metric (A / B):")
    for metric, (a, b) in _significant_win_counts(bundle).items():
        lines.append(f"  {metric:<12}{f'{a} / {b}':>28}")
    if bundle.exclusions:
        lines.append("")
        lines.append("Excluded functions:")
        for item in bundle.exclusions:
            lines.append(f"  {item['function_id']}: {item['reason']}")
    return "\n".join(lines) + "\n"


def bundle_json_bytes(bundle: ReportBundle) -> bytes:
    """Canonical serialization; identical bundles give identical bytes."""
    return (json.dumps(bundle.to_json_dict(), indent=2, sort_keys=True) + "\n").encode()


def export_dashboard_bundle(bundle: ReportBundle, out_dir: str | Path) -> Path:
    """Write the self-contained report.json plus an index manifest."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_bytes(bundle_json_bytes(bundle))
        index = {
            "schema_version": bundle.schema_version,
            "reports": [
                {
                    "file": "report.json",
                    "method_a": bundle.method_a,
                    "method_b": bundle.method_b,
                    "fingerprint": bundle.fingerprint,
                }
            ],
        }
        (out / "index.json").write_text(
            json.dumps(index, indent=2, sort_keys=True) + "\n"
        )
    except OSError as exc:
        raise IoFailure(f"could not export bundle to {out}: {exc}") from exc
    return out


def write_outcomes_csv(bundle: ReportBundle, path: str | Path) -> Path:
    """Delimited per-(function, metric) outcome table."""
    path = Path(path)
    fields = [
        "function_id", "metric", "mean_a", "mean_b", "u_statistic",
        "p_value", "direction", "significant", "verdict",
    ]
    try:
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(fields)
            for fid in sorted(bundle.per_function):
                entry = bundle.per_function[fid]
                for metric in bundle.metric_names:
                    o = entry["outcomes"][metric]
                    writer.writerow(
                        [
                            fid, metric, o["mean_a"], o["mean_b"],
                            o["u_statistic"], o["p_value"],
                            o["direction"], o["significant"], entry["verdict"],
                        ]
                    )
    except OSError as exc:
        raise IoFailure(f"could not write {path}: {exc}") from exc
    return path
