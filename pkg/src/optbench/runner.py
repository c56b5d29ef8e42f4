"""Campaign orchestration and filesystem archives.

A campaign is the cross product methods x functions x repeats.  Every run
gets a seed derived context-free from (base_seed, method_id, function_id,
repeat), so a run executes identically whether scheduled alone, inline, or
on any number of pool workers, and interrupted campaigns can resume without
redoing finished work.  Archives are plain JSON: one record per run under
``runs/<method>/<function>/<repeat>.json`` plus a campaign manifest.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
import shutil
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from . import benchfn
from .benchfn import BenchmarkFunction, apply_bias_shift, catalog, catalog_json, get_function
from .errors import FatalConfigError, IoFailure, ManifestMismatch
from .metrics import (
    BestSeenTrace,
    MetricVector,
    best_seen_trace,
    compute_metrics,
    extend_to_budget,
)
from .optimizers import OptimizerSpec, Point, SuggestObserveSession

SCHEMA_VERSION = "1"

# reserved method slot in the seed derivation for per-(function, repeat)
# bias shifts, shared by every method in the campaign
_SHIFT_TOKEN = "__bias_shift__"

COMPLETED = "completed"
FAILED = "failed"


def derive_seed(base_seed: int, method_id: str, function_id: str, repeat: int) -> int:
    """Stable 64-bit run seed; independent of scheduling context."""
    key = f"{base_seed}|{method_id}|{function_id}|{repeat}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def _round_half_away(value: float) -> float:
    return float(math.floor(value + 0.5) if value >= 0 else math.ceil(value - 0.5))


def round_integer_dims(fn: BenchmarkFunction, point: Sequence[float]) -> Point:
    """Round integer-constrained coordinates half away from zero, in-box."""
    if not fn.integer_dims:
        return tuple(float(c) for c in point)
    out = [float(c) for c in point]
    for i in fn.integer_dims:
        lo, hi = fn.domain[i]
        out[i] = float(min(max(_round_half_away(out[i]), math.ceil(lo)), math.floor(hi)))
    return tuple(out)


@dataclass(frozen=True)
class CampaignConfig:
    methods: tuple[OptimizerSpec, ...]
    function_ids: tuple[str, ...]
    repeats: int = 20
    budget: int = 40
    base_seed: int = 0
    workers: int = 1
    alpha: float = 0.01
    apply_bias_shifts: bool = True
    output_dir: str = "campaign_out"

    def __post_init__(self) -> None:
        if not self.methods:
            raise FatalConfigError("campaign needs at least one method")
        ids = [m.method_id for m in self.methods]
        if len(ids) != len(set(ids)):
            raise FatalConfigError(f"duplicate method_id in {ids}")
        if not self.function_ids:
            raise FatalConfigError("campaign needs at least one function id")
        if len(set(self.function_ids)) != len(self.function_ids):
            raise FatalConfigError("duplicate function ids")
        if self.repeats < 2:
            raise FatalConfigError("repeats must be at least 2")
        if self.budget < 1:
            raise FatalConfigError("budget must be positive")
        if self.workers < 1:
            raise FatalConfigError("workers must be positive")
        if not 0.0 < self.alpha <= 1.0:
            raise FatalConfigError("alpha must lie in (0, 1]")
        known = {fn.id for fn in catalog()}
        missing = [fid for fid in self.function_ids if fid not in known]
        if missing:
            raise FatalConfigError(f"unknown function ids: {missing}")

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "CampaignConfig":
        try:
            methods = tuple(
                OptimizerSpec(
                    method_id=m["method_id"],
                    kind=m["kind"],
                    params=dict(m.get("params", {})),
                    version_label=m.get("version_label", ""),
                )
                for m in raw["methods"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FatalConfigError(f"bad methods entry: {exc}") from exc
        fids = raw.get("function_ids") or [fn.id for fn in catalog()]
        kwargs = {}
        for key in ("repeats", "budget", "base_seed", "workers", "alpha",
                    "apply_bias_shifts", "output_dir"):
            if key in raw and raw[key] is not None:
                kwargs[key] = raw[key]
        return cls(methods=methods, function_ids=tuple(fids), **kwargs)

    def to_dict(self) -> dict:
        return {
            "methods": [
                {
                    "method_id": m.method_id,
                    "kind": m.kind,
                    "params": dict(m.params),
                    "version_label": m.version_label,
                }
                for m in self.methods
            ],
            "function_ids": list(self.function_ids),
            "repeats": self.repeats,
            "budget": self.budget,
            "base_seed": self.base_seed,
            "workers": self.workers,
            "alpha": self.alpha,
            "apply_bias_shifts": self.apply_bias_shifts,
            "output_dir": str(self.output_dir),
        }

    def fingerprint(self) -> str:
        """Hash of everything that determines run results.

        Workers, alpha, and output_dir are deliberately excluded: they
        change scheduling, reporting, or location, never the records.
        """
        identity = self.to_dict()
        for volatile in ("workers", "alpha", "output_dir"):
            identity.pop(volatile)
        blob = json.dumps(identity, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def method(self, method_id: str) -> OptimizerSpec:
        for m in self.methods:
            if m.method_id == method_id:
                return m
        raise KeyError(method_id)


@dataclass
class RunRecord:
    """One optimizer x function x repeat execution, as archived."""

    schema_version: str
    method_id: str
    function_id: str
    repeat_index: int
    seed: int
    evaluations: list[tuple[Point, float]]
    trace: BestSeenTrace | None
    metrics: MetricVector | None
    status: str
    diagnostic: str | None
    duration_ms: int
    extras: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        doc = dict(self.extras)
        doc.update(
            {
                "schema_version": self.schema_version,
                "method_id": self.method_id,
                "function_id": self.function_id,
                "repeat_index": self.repeat_index,
                "seed": self.seed,
                "evaluations": [
                    {"x": list(x), "value": v} for x, v in self.evaluations
                ],
                "trace": list(self.trace.values) if self.trace is not None else None,
                "metrics": self.metrics.as_dict() if self.metrics is not None else None,
                "status": self.status,
                "diagnostic": self.diagnostic,
                "duration_ms": self.duration_ms,
            }
        )
        return doc

    @classmethod
    def from_json_dict(cls, doc: Mapping[str, Any]) -> "RunRecord":
        known = {
            "schema_version", "method_id", "function_id", "repeat_index", "seed",
            "evaluations", "trace", "metrics", "status", "diagnostic", "duration_ms",
        }
        extras = {k: v for k, v in doc.items() if k not in known}
        trace = doc.get("trace")
        metrics = doc.get("metrics")
        return cls(
            schema_version=doc["schema_version"],
            method_id=doc["method_id"],
            function_id=doc["function_id"],
            repeat_index=doc["repeat_index"],
            seed=doc["seed"],
            evaluations=[
                (tuple(e["x"]), float(e["value"])) for e in doc["evaluations"]
            ],
            trace=BestSeenTrace(tuple(trace)) if trace is not None else None,
            metrics=MetricVector(**metrics) if metrics is not None else None,
            status=doc["status"],
            diagnostic=doc.get("diagnostic"),
            duration_ms=int(doc.get("duration_ms", 0)),
            extras=extras,
        )


def _dump_json(doc: Any, path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise IoFailure(f"could not write {path}: {exc}") from exc


def _load_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise IoFailure(f"could not read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoFailure(f"corrupt JSON in {path}: {exc}") from exc


def record_relpath(method_id: str, function_id: str, repeat: int) -> str:
    return f"runs/{method_id}/{function_id}/{repeat}.json"


class CampaignArchive:
    """Read access to a campaign output directory."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        manifest_path = self.root / "manifest.json"
        if not manifest_path.exists():
            raise IoFailure(f"no manifest.json under {self.root}")
        self.manifest = _load_json(manifest_path)

    @property
    def config(self) -> CampaignConfig:
        return CampaignConfig.from_dict(self.manifest["config"])

    @property
    def fingerprint(self) -> str:
        return self.manifest["fingerprint"]

    def method_ids(self) -> list[str]:
        return [m["method_id"] for m in self.manifest["config"]["methods"]]

    def function_ids(self) -> list[str]:
        return list(self.manifest["config"]["function_ids"])

    def run_entries(self) -> list[dict]:
        return list(self.manifest["runs"])

    def load_record(self, method_id: str, function_id: str, repeat: int) -> RunRecord:
        path = self.root / record_relpath(method_id, function_id, repeat)
        return RunRecord.from_json_dict(_load_json(path))

    def records_for(self, method_id: str, function_id: str) -> list[RunRecord]:
        repeats = self.manifest["config"]["repeats"]
        return [
            self.load_record(method_id, function_id, r) for r in range(repeats)
        ]


def execute_run(
    spec: OptimizerSpec,
    function_id: str,
    repeat: int,
    base_seed: int,
    budget: int,
    apply_shifts: bool,
) -> RunRecord:
    """Execute one run; failures come back as status=failed records."""
    fn = get_function(function_id)
    if apply_shifts and fn.predictable_optimum:
        fn, _ = apply_bias_shift(
            fn, derive_seed(base_seed, _SHIFT_TOKEN, function_id, repeat)
        )
    seed = derive_seed(base_seed, spec.method_id, function_id, repeat)
    evaluations: list[tuple[Point, float]] = []
    status, diagnostic = COMPLETED, None
    started = time.perf_counter()
    try:
        with SuggestObserveSession(spec, fn.domain, budget, seed) as session:
            while not session.done:
                suggested = session.suggest()
                if suggested is None:
                    break
                point = round_integer_dims(fn, suggested)
                value = benchfn.evaluate(fn, point)
                session.observe(suggested, value)
                evaluations.append((point, value))
    except Exception as exc:  # isolate per-run faults into the record
        status = FAILED
        diagnostic = f"{type(exc).__name__}: {exc}"
    duration_ms = int(1000 * (time.perf_counter() - started))
    trace = metrics = None
    if status == COMPLETED:
        trace = best_seen_trace([v for _, v in evaluations])
        metrics = compute_metrics(extend_to_budget(trace, budget))
    return RunRecord(
        schema_version=SCHEMA_VERSION,
        method_id=spec.method_id,
        function_id=function_id,
        repeat_index=repeat,
        seed=seed,
        evaluations=evaluations,
        trace=trace,
        metrics=metrics,
        status=status,
        diagnostic=diagnostic,
        duration_ms=duration_ms,
    )


def _run_task(args: tuple) -> dict:
    spec, function_id, repeat, base_seed, budget, apply_shifts = args
    record = execute_run(spec, function_id, repeat, base_seed, budget, apply_shifts)
    return record.to_json_dict()


def _check_external_commands(config: CampaignConfig) -> None:
    for spec in config.methods:
        if spec.kind != "external":
            continue
        exe = spec.params["command"][0]
        if shutil.which(exe) is None and not os.path.exists(exe):
            raise FatalConfigError(
                f"method {spec.method_id}: adapter command {exe!r} not resolvable"
            )


def _write_manifest(config: CampaignConfig, root: Path, statuses: Mapping[tuple, str]) -> None:
    functions = [get_function(fid) for fid in config.function_ids]
    runs = []
    for spec in config.methods:
        for fid in config.function_ids:
            for r in range(config.repeats):
                runs.append(
                    {
                        "method_id": spec.method_id,
                        "function_id": fid,
                        "repeat": r,
                        "status": statuses[(spec.method_id, fid, r)],
                        "path": record_relpath(spec.method_id, fid, r),
                    }
                )
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_dict(),
        "fingerprint": config.fingerprint(),
        "catalog": catalog_json(functions),
        "runs": runs,
    }
    _dump_json(manifest, root / "manifest.json")


def _execute_tasks(config: CampaignConfig, tasks: list[tuple]) -> dict[tuple, dict]:
    """Run tasks inline or on a process pool; keyed by (method, function, repeat)."""
    results: dict[tuple, dict] = {}
    if config.workers == 1:
        for task in tasks:
            doc = _run_task(task)
            results[(task[0].method_id, task[1], task[2])] = doc
        return results
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        futures = {
            pool.submit(_run_task, task): (task[0].method_id, task[1], task[2])
            for task in tasks
        }
        for future, key in futures.items():
            results[key] = future.result()
    return results


def run_campaign(config: CampaignConfig) -> CampaignArchive:
    """Execute every (method, function, repeat) run and persist the archive."""
    _check_external_commands(config)
    root = Path(config.output_dir)
    root.mkdir(parents=True, exist_ok=True)
    tasks = [
        (spec, fid, r, config.base_seed, config.budget, config.apply_bias_shifts)
        for spec in config.methods
        for fid in config.function_ids
        for r in range(config.repeats)
    ]
    results = _execute_tasks(config, tasks)
    statuses = {}
    for key, doc in results.items():
        method_id, fid, r = key
        _dump_json(doc, root / record_relpath(method_id, fid, r))
        statuses[key] = doc["status"]
    _write_manifest(config, root, statuses)
    return CampaignArchive(root)


def resume_campaign(config: CampaignConfig, root: str | Path) -> CampaignArchive:
    """Re-run only missing or failed records of an existing archive.

    The archive must have been produced by a config with the same
    fingerprint; completed records are left untouched byte-for-byte.
    """
    root = Path(root)
    archive = CampaignArchive(root)
    if archive.fingerprint != config.fingerprint():
        raise ManifestMismatch(
            f"archive fingerprint {archive.fingerprint[:12]}... does not match "
            f"config fingerprint {config.fingerprint()[:12]}..."
        )
    statuses: dict[tuple, str] = {}
    todo: list[tuple] = []
    for spec in config.methods:
        for fid in config.function_ids:
            for r in range(config.repeats):
                key = (spec.method_id, fid, r)
                path = root / record_relpath(spec.method_id, fid, r)
                status = None
                if path.exists():
                    status = _load_json(path).get("status")
                if status == COMPLETED:
                    statuses[key] = COMPLETED
                else:
                    todo.append(
                        (spec, fid, r, config.base_seed, config.budget,
                         config.apply_bias_shifts)
                    )
    results = _execute_tasks(config, todo)
    for key, doc in results.items():
        method_id, fid, r = key
        _dump_json(doc, root / record_relpath(method_id, fid, r))
        statuses[key] = doc["status"]
    _write_manifest(config, root, statuses)
    return CampaignArchive(root)


def validate_archive(archive: CampaignArchive) -> list[str]:
    """Re-derive every trace and metric vector; returns mismatch messages."""
    problems: list[str] = []
    config = archive.config
    boxes = {
        entry["id"]: (entry["domain"], entry["integer_dims"])
        for entry in archive.manifest["catalog"]
    }
    for entry in archive.run_entries():
        path = archive.root / entry["path"]
        if not path.exists():
            problems.append(f"{entry['path']}: listed in manifest but missing")
            continue
        record = RunRecord.from_json_dict(_load_json(path))
        where = entry["path"]
        if record.status != entry["status"]:
            problems.append(
                f"{where}: manifest status {entry['status']} != record {record.status}"
            )
        if len(record.evaluations) > config.budget:
            problems.append(f"{where}: {len(record.evaluations)} evaluations exceed budget")
        domain, integer_dims = boxes[record.function_id]
        for k, (x, _) in enumerate(record.evaluations):
            if len(x) != len(domain) or any(
                not (lo <= c <= hi) for c, (lo, hi) in zip(x, domain)
            ):
                problems.append(f"{where}: evaluation {k} point outside the box")
                break
            if any(not float(x[i]).is_integer() for i in integer_dims):
                problems.append(f"{where}: evaluation {k} breaks integrality")
                break
        if record.status != COMPLETED:
            continue
        expected_trace = best_seen_trace([v for _, v in record.evaluations])
        if record.trace is None or record.trace.values != expected_trace.values:
            problems.append(f"{where}: stored trace does not match evaluations")
            continue
        expected_metrics = compute_metrics(extend_to_budget(expected_trace, config.budget))
        if record.metrics != expected_metrics:
            problems.append(f"{where}: stored metrics do not match recomputation")
    return problems
