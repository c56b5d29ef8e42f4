"""Static figure rendering for report bundles.

Color convention throughout: red marks method A favored, green method B
favored.  Figures are written as PNG files next to the exported bundle so
a report directory is browsable without the dashboard.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .report import ReportBundle  # noqa: E402

A_COLOR = "#c23b22"
B_COLOR = "#2e8b57"


def render_trace_figure(bundle: ReportBundle, function_id: str, path: Path) -> None:
    entry = bundle.per_function[function_id]
    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    x = range(1, bundle.budget + 1)
    pairs = [(bundle.method_a, bundle.label_a, A_COLOR)]
    if bundle.method_b != bundle.method_a:
        pairs.append((bundle.method_b, bundle.label_b, B_COLOR))
    for method, label, color in pairs:
        trace = entry["traces"][method]
        ax.plot(x, trace["median"], color=color, linewidth=1.8, label=label)
        ax.fill_between(x, trace["q25"], trace["q75"], color=color, alpha=0.22, linewidth=0)
    ax.set_xlabel("evaluations")
    ax.set_ylabel("best seen value")
    ax.set_title(f"{function_id}  (verdict: {entry['verdict']})")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _bin_labels(edges: list[float]) -> list[str]:
    labels = []
    for i in range(len(edges) - 1):
        close = "]" if i == len(edges) - 2 else ")"
        labels.append(f"[{edges[i]:g}, {edges[i + 1]:g}{close}")
    return labels


def render_pvalue_figure(bundle: ReportBundle, metric: str, path: Path) -> None:
    hist = bundle.histograms[metric]
    labels = _bin_labels(hist["edges"])
    sides = [
        (f"{bundle.label_a} (A) favored", hist["a_bins"], A_COLOR),
        (f"{bundle.label_b} (B) favored", hist["b_bins"], B_COLOR),
    ]
    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.2), sharey=True)
    for ax, (title, bins, color) in zip(axes, sides):
        counts = [len(b) for b in bins]
        ax.bar(range(len(counts)), counts, color=color)
        ax.set_xticks(range(len(counts)))
        ax.set_xticklabels(labels, rotation=40, ha="right", fontsize=8)
        ax.set_title(title, fontsize=10)
        ax.set_xlabel("p-value bin")
    axes[0].set_ylabel("functions")
    fig.suptitle(f"{metric}: p-value distribution")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_totals_figure(bundle: ReportBundle, path: Path) -> None:
    counts = bundle.totals.as_dict()
    names = list(counts)
    values = [counts[n] for n in names]
    fig, ax = plt.subplots(figsize=(5.4, 3.8))
    bars = ax.bar(names, values, color=[A_COLOR, B_COLOR, "#888888", "#b8860b"])
    for bar, value in zip(bars, values):
        ax.annotate(
            str(value),
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center", va="bottom",
        )
    ax.set_ylabel("functions")
    ax.set_title(f"Total performance: {bundle.label_a} (A) vs {bundle.label_b} (B)")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_all_figures(bundle: ReportBundle, out_dir: str | Path) -> list[Path]:
    """Write the totals chart, per-metric histograms, and per-function traces."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    totals_path = out / "totals.png"
    render_totals_figure(bundle, totals_path)
    written.append(totals_path)
    for metric in bundle.metric_names:
        path = out / f"pvalues_{metric}.png"
        render_pvalue_figure(bundle, metric, path)
        written.append(path)
    for fid in sorted(bundle.per_function):
        path = out / f"trace_{fid}.png"
        render_trace_figure(bundle, fid, path)
        written.append(path)
    return written
