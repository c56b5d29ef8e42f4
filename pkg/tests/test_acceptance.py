"""Acceptance gate: one test per stated criterion, each printing a verdict.

Every test emits a single ACCEPTANCE PASS/FAIL line (bypassing pytest's
capture) so the gate can be read off a plain `pytest -v` run.
"""
import time
from contextlib import contextmanager

import numpy as np
import pytest
from click.testing import CliRunner

from _oracles import exact_p_by_enumeration
from optbench import benchfn
from optbench.cli import main as bench_cli
from optbench.optimizers import OptimizerSpec
from optbench.report import build_report, bundle_json_bytes
from optbench.runner import CampaignConfig, run_campaign, validate_archive
from optbench.stats import mann_whitney_u
from optbench.testing import (
    figure_one_values,
    random_campaign_values,
    write_synthetic_archive,
)


@contextmanager
def criterion(capsys, name):
    outcome = {"detail": ""}
    started = time.monotonic()
    try:
        yield outcome
    except BaseException as exc:
        with capsys.disabled():
            print(f"\nACCEPTANCE FAIL: {name}: {exc}")
        raise
    elapsed = time.monotonic() - started
    detail = f" [{outcome['detail']}]" if outcome["detail"] else ""
    with capsys.disabled():
        print(f"\nACCEPTANCE PASS: {name} ({elapsed:.1f}s){detail}")


def tie_free_pair(rng, n_a, n_b):
    while True:
        pooled = rng.uniform(-10.0, 10.0, size=n_a + n_b)
        if np.unique(pooled).size == pooled.size:
            return pooled[:n_a].tolist(), pooled[n_a:].tolist()


def test_mann_whitney_oracle_equivalence(capsys):
    """200 random tie-free pairs (sizes <= 7) against full enumeration."""
    with criterion(capsys, "Mann-Whitney oracle equivalence (1e-12, <10s)") as out:
        rng = np.random.default_rng(2024)
        started = time.monotonic()
        worst = 0.0
        for _ in range(200):
            n_a = int(rng.integers(2, 8))
            n_b = int(rng.integers(2, 8))
            a, b = tie_free_pair(rng, n_a, n_b)
            _, p = mann_whitney_u(a, b, mode="exact")
            worst = max(worst, abs(p - exact_p_by_enumeration(a, b)))
            assert worst <= 1e-12, f"deviation {worst} exceeds 1e-12"
        elapsed = time.monotonic() - started
        assert elapsed < 10.0, f"took {elapsed:.1f}s"
        out["detail"] = f"200 pairs, max deviation {worst:.2e}"


def test_normal_approximation_quality(capsys):
    """100 tie-free pairs at n=10: exact vs approximate within 0.02."""
    with criterion(capsys, "Approximation quality (|dp| <= 0.02, <10s)") as out:
        rng = np.random.default_rng(77)
        started = time.monotonic()
        worst = 0.0
        for _ in range(100):
            a, b = tie_free_pair(rng, 10, 10)
            _, p_exact = mann_whitney_u(a, b, mode="exact")
            _, p_approx = mann_whitney_u(a, b, mode="approximate")
            worst = max(worst, abs(p_exact - p_approx))
            assert worst <= 0.02, f"deviation {worst} exceeds 0.02"
        elapsed = time.monotonic() - started
        assert elapsed < 10.0, f"took {elapsed:.1f}s"
        out["detail"] = f"100 pairs, max |p_exact - p_approx| {worst:.4f}"


def test_figure_one_reproduction(capsys, tmp_path):
    """Equal Best Found, faster convergence for A: AUC alone decides a win."""
    with criterion(capsys, "Figure 1 reproduction (<5s)") as out:
        started = time.monotonic()
        archive = write_synthetic_archive(
            tmp_path / "fig1", figure_one_values(), budget=40
        )
        bundle = build_report(archive, "A", "B", alpha=0.01)
        entry = bundle.per_function["neg_sphere_2d"]
        best_found = entry["outcomes"]["best_found"]
        auc = entry["outcomes"]["auc"]
        assert not best_found["significant"], best_found
        assert auc["significant"] and auc["direction"] == "a_higher", auc
        assert auc["p_value"] <= 0.01
        assert entry["verdict"] == "win"
        elapsed = time.monotonic() - started
        assert elapsed < 5.0, f"took {elapsed:.1f}s"
        out["detail"] = (
            f"best_found p={best_found['p_value']:g}, auc p={auc['p_value']:.2e}"
        )


def test_partition_invariant_on_randomized_campaigns(capsys, tmp_path):
    """wins + loses + ties + mixed always equals the compared-function count."""
    with criterion(capsys, "Partition invariant (20 randomized campaigns)") as out:
        for i in range(20):
            rng = np.random.default_rng(1000 + i)
            values = random_campaign_values(rng)
            archive = write_synthetic_archive(tmp_path / f"c{i}", values, budget=12)
            bundle = build_report(archive, "A", "B")
            assert bundle.totals.total == len(bundle.per_function), (
                i, bundle.totals.as_dict(), len(bundle.per_function),
            )
            assert len(bundle.per_function) == len(values["A"])
        out["detail"] = "20 campaigns, 2-20 functions each"


def test_self_comparison_neutrality(capsys, tmp_path):
    with criterion(capsys, "Self-comparison neutrality (0, 0, n, 0)") as out:
        rng = np.random.default_rng(5150)
        values = random_campaign_values(rng, n_functions=8)
        archive = write_synthetic_archive(tmp_path / "self", values, budget=12)
        bundle = build_report(archive, "B", "B")
        assert bundle.totals.as_dict() == {"wins": 0, "loses": 0, "ties": 8, "mixed": 0}
        for fid, entry in bundle.per_function.items():
            for metric, outcome in entry["outcomes"].items():
                assert outcome["p_value"] == 1.0, (fid, metric, outcome)
        out["detail"] = "8 functions, p = 1.0 on every metric"


SMOOTH_FIDS = [
    "neg_sphere_2d", "neg_sphere_5d", "neg_rosenbrock_2d", "neg_rastrigin_2d",
    "neg_rastrigin_3d", "neg_ackley_2d", "neg_griewank_2d", "neg_bohachevsky_2d",
    "neg_branin_2d", "neg_bird_2d", "neg_sixhump_camel_2d",
]


@pytest.fixture(scope="module")
def baseline_campaign(tmp_path_factory):
    """PSO vs random search on 11 smooth/multimodal functions, budget 40*d.

    Functions are grouped by dimension so each campaign can use the
    dimension-appropriate budget; verdicts are summed across groups.
    """
    root = tmp_path_factory.mktemp("baseline")
    methods = (
        OptimizerSpec(method_id="pso", kind="pso"),
        OptimizerSpec(method_id="rs", kind="random_search"),
    )
    by_dim = {}
    for fid in SMOOTH_FIDS:
        by_dim.setdefault(benchfn.get_function(fid).dim, []).append(fid)
    started = time.monotonic()
    archives = []
    for dim, fids in sorted(by_dim.items()):
        config = CampaignConfig(
            methods=methods,
            function_ids=tuple(fids),
            repeats=20,
            budget=40 * dim,
            base_seed=31337,
            workers=4,
            output_dir=str(root / f"dim{dim}"),
        )
        archives.append(run_campaign(config))
    return archives, time.monotonic() - started


def test_baseline_separation_end_to_end(capsys, baseline_campaign):
    with criterion(capsys, "Baseline separation (PSO vs random, <10min)") as out:
        archives, run_elapsed = baseline_campaign
        assert run_elapsed < 600.0, f"campaigns took {run_elapsed:.0f}s"
        totals = {"wins": 0, "loses": 0, "ties": 0, "mixed": 0}
        sphere_outcomes = {}
        for archive in archives:
            bundle = build_report(archive, "pso", "rs", alpha=0.01)
            for key, count in bundle.totals.as_dict().items():
                totals[key] += count
            for fid, entry in bundle.per_function.items():
                if fid.startswith("neg_sphere"):
                    sphere_outcomes[fid] = entry["outcomes"]["best_found"]
        assert totals["wins"] > totals["loses"], totals
        assert sphere_outcomes, "no sphere-family function compared"
        for fid, outcome in sphere_outcomes.items():
            assert outcome["direction"] == "a_higher", (fid, outcome)
            assert outcome["p_value"] <= 0.01, (fid, outcome)
        out["detail"] = (
            f"totals {totals}, sphere best_found p <= "
            f"{max(o['p_value'] for o in sphere_outcomes.values()):.2e}, "
            f"campaigns {run_elapsed:.0f}s"
        )


@pytest.fixture(scope="module")
def determinism_archives(tmp_path_factory):
    root = tmp_path_factory.mktemp("determinism")
    methods = (
        OptimizerSpec(method_id="pso", kind="pso", params={"swarm_size": 8}),
        OptimizerSpec(method_id="rs", kind="random_search"),
    )
    fids = ("neg_sphere_2d", "neg_rastrigin_2d", "neg_sphere_mixed_3d", "neg_step_2d")
    archives = {}
    for workers in (1, 8):
        config = CampaignConfig(
            methods=methods, function_ids=fids, repeats=5, budget=30,
            base_seed=7, workers=workers, output_dir=str(root / f"w{workers}"),
        )
        archives[workers] = run_campaign(config)
    return archives


def test_worker_count_determinism(capsys, determinism_archives):
    with criterion(capsys, "Determinism across worker counts (1 vs 8)") as out:
        a1, a8 = determinism_archives[1], determinism_archives[8]
        compared = 0
        for entry in a1.run_entries():
            r1 = a1.load_record(entry["method_id"], entry["function_id"], entry["repeat"])
            r8 = a8.load_record(entry["method_id"], entry["function_id"], entry["repeat"])
            d1, d8 = r1.to_json_dict(), r8.to_json_dict()
            d1.pop("duration_ms"), d8.pop("duration_ms")
            assert d1 == d8, entry["path"]
            compared += 1
        b1 = bundle_json_bytes(build_report(a1, "pso", "rs"))
        b8 = bundle_json_bytes(build_report(a8, "pso", "rs"))
        assert b1 == b8
        out["detail"] = f"{compared} records and report.json byte-identical"


def test_archive_self_consistency_via_validate(
    capsys, baseline_campaign, determinism_archives, tmp_path
):
    """`bench validate` re-derives all traces and metrics with zero mismatches."""
    with criterion(capsys, "Archive self-consistency (bench validate)") as out:
        archives = list(baseline_campaign[0]) + list(determinism_archives.values())
        fig1 = write_synthetic_archive(tmp_path / "fig1", figure_one_values(), budget=40)
        archives.append(fig1)
        runner = CliRunner()
        checked = 0
        for archive in archives:
            assert validate_archive(archive) == []
            result = runner.invoke(bench_cli, ["validate", "--archive", str(archive.root)])
            assert result.exit_code == 0, result.output
            checked += len(archive.run_entries())
        out["detail"] = f"{len(archives)} archives, {checked} records, 0 mismatches"


def test_catalog_optimum_audit(capsys):
    """100k random in-domain points never beat a stored optimum by > 1e-6."""
    with criterion(capsys, "Catalog optimum audit (1e5 points, 1e-6)") as out:
        rng = np.random.default_rng(90210)
        audited = 0
        for fn in benchfn.catalog():
            assert fn.known_optimum_value is not None
            points = benchfn.sample_points(fn, 100_000, rng)
            values = benchfn.evaluate_batch(fn, points)
            excess = float(values.max()) - fn.known_optimum_value
            assert excess <= 1e-6, (fn.id, excess)
            audited += 1
        out["detail"] = f"{audited} functions audited"
