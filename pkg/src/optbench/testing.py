"""Synthetic archive builders for tests and dashboard fixtures.

These produce fully consistent campaign archives (manifest plus records)
from hand-chosen raw value sequences, so comparison logic can be exercised
against engineered distributions without running any optimizer.
"""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .benchfn import catalog, get_function
from .metrics import best_seen_trace, compute_metrics, extend_to_budget
from .optimizers import OptimizerSpec
from .runner import (
    COMPLETED,
    CampaignArchive,
    CampaignConfig,
    RunRecord,
    SCHEMA_VERSION,
    _dump_json,
    _write_manifest,
    derive_seed,
    record_relpath,
    round_integer_dims,
)

# values: {method_id: {function_id: [run0 raw values, run1 raw values, ...]}}
SyntheticValues = Mapping[str, Mapping[str, Sequence[Sequence[float]]]]


def write_synthetic_archive(
    root: str | Path,
    values: SyntheticValues,
    budget: int,
    base_seed: int = 0,
    alpha: float = 0.01,
) -> CampaignArchive:
    """Materialize an archive whose runs carry the given raw value lists."""
    root = Path(root)
    method_ids = list(values)
    function_sets = {m: tuple(values[m]) for m in method_ids}
    first = function_sets[method_ids[0]]
    if any(set(fids) != set(first) for fids in function_sets.values()):
        raise ValueError("every method needs the same function set")
    repeats = {len(runs) for m in method_ids for runs in values[m].values()}
    if len(repeats) != 1:
        raise ValueError(f"methods disagree on repeat count: {sorted(repeats)}")
    config = CampaignConfig(
        methods=tuple(OptimizerSpec(method_id=m, kind="random_search") for m in method_ids),
        function_ids=first,
        repeats=repeats.pop(),
        budget=budget,
        base_seed=base_seed,
        alpha=alpha,
        output_dir=str(root),
    )
    statuses = {}
    for method_id in method_ids:
        for fid in first:
            fn = get_function(fid)
            point = round_integer_dims(fn, tuple(fn.midpoint.tolist()))
            for r, raw in enumerate(values[method_id][fid]):
                if not 0 < len(raw) <= budget:
                    raise ValueError(f"run ({method_id}, {fid}, {r}) has bad length")
                trace = best_seen_trace(raw)
                record = RunRecord(
                    schema_version=SCHEMA_VERSION,
                    method_id=method_id,
                    function_id=fid,
                    repeat_index=r,
                    seed=derive_seed(base_seed, method_id, fid, r),
                    evaluations=[(point, float(v)) for v in raw],
                    trace=trace,
                    metrics=compute_metrics(extend_to_budget(trace, budget)),
                    status=COMPLETED,
                    diagnostic=None,
                    duration_ms=0,
                )
                _dump_json(record.to_json_dict(), root / record_relpath(method_id, fid, r))
                statuses[(method_id, fid, r)] = COMPLETED
    _write_manifest(config, root, statuses)
    return CampaignArchive(root)


def _ramp(rng: np.random.Generator, reach_at: int, budget: int, top: float) -> list[float]:
    """Monotone raw values hitting ``top`` at evaluation ``reach_at`` (1-based)."""
    start = 0.2 + 0.02 * float(rng.uniform())
    ramp = np.linspace(start, top, reach_at).tolist()
    return ramp + [top] * (budget - reach_at)


def figure_one_values(
    function_id: str = "neg_sphere_2d",
    repeats: int = 20,
    budget: int = 40,
    top: float = 0.97,
    seed: int = 0,
) -> SyntheticValues:
    """Two methods with equal Best Found but very different convergence speed.

    Method A reaches the optimum within the first 10 evaluations, method B
    only after evaluation 30, with per-repeat jitter on the crossing point.
    Best Found is identical everywhere (no significance); AUC separates the
    methods decisively.
    """
    rng = np.random.default_rng(seed)
    a_runs = [_ramp(rng, int(rng.integers(5, 11)), budget, top) for _ in range(repeats)]
    b_runs = [_ramp(rng, int(rng.integers(31, 40)), budget, top) for _ in range(repeats)]
    return {"A": {function_id: a_runs}, "B": {function_id: b_runs}}


def random_campaign_values(
    rng: np.random.Generator,
    n_functions: int | None = None,
    repeats: int = 6,
    budget: int = 12,
) -> SyntheticValues:
    """Random raw sequences over a random slice of the catalog, both methods."""
    fids = [fn.id for fn in catalog()]
    if n_functions is None:
        n_functions = int(rng.integers(2, len(fids) + 1))
    chosen = list(rng.choice(fids, size=n_functions, replace=False))
    out: dict[str, dict[str, list[list[float]]]] = {"A": {}, "B": {}}
    for fid in chosen:
        for method in out:
            level = float(rng.uniform(-1.0, 1.0))
            out[method][fid] = [
                (level + rng.normal(scale=0.5, size=int(rng.integers(1, budget + 1))))
                .tolist()
                for _ in range(repeats)
            ]
    return out
