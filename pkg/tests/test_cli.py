"""End-to-end CLI tests through click's runner plus one real-process smoke."""
import json
import subprocess
from pathlib import Path

import pytest
from click.testing import CliRunner

from optbench.cli import main
from optbench.runner import record_relpath


@pytest.fixture()
def runner():
    return CliRunner()


def write_config(tmp_path, **overrides) -> Path:
    cfg = {
        "methods": [
            {"method_id": "rs", "kind": "random_search"},
            {"method_id": "pso", "kind": "pso", "params": {"swarm_size": 5}},
        ],
        "function_ids": ["neg_sphere_2d", "neg_rastrigin_2d"],
        "repeats": 3,
        "budget": 8,
        "base_seed": 5,
        "workers": 1,
        "output_dir": str(tmp_path / "camp"),
    }
    cfg.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return path


def test_help_lists_all_commands(runner):
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for command in ("run", "report", "catalog", "validate"):
        assert command in result.output


def test_catalog_prints_json(runner):
    result = runner.invoke(main, ["catalog"])
    assert result.exit_code == 0
    entries = json.loads(result.output)
    assert len(entries) >= 16
    assert {"id", "dim", "domain", "integer_dims", "properties",
            "known_optimum_value", "predictable_optimum"} == set(entries[0])


def test_run_report_validate_pipeline(runner, tmp_path):
    config_path = write_config(tmp_path)
    result = runner.invoke(main, ["run", "--config", str(config_path)])
    assert result.exit_code == 0, result.output
    assert "12 runs archived" in result.output
    camp = str(tmp_path / "camp")

    result = runner.invoke(main, ["validate", "--archive", camp])
    assert result.exit_code == 0, result.output
    assert "archive consistent: 12 records verified" in result.output

    result = runner.invoke(main, ["report", "--archive", camp, "--a", "pso", "--b", "rs"])
    assert result.exit_code == 0, result.output
    assert "Total performance: pso (A) vs rs (B)" in result.output
    assert "Wins" in result.output and "Mixed" in result.output

    out_dir = tmp_path / "out"
    result = runner.invoke(
        main,
        ["report", "--archive", camp, "--a", "pso", "--b", "rs",
         "--alpha", "0.01", "--out", str(out_dir)],
    )
    assert result.exit_code == 0, result.output
    assert (out_dir / "report.json").exists()
    assert (out_dir / "index.json").exists()
    assert (out_dir / "outcomes.csv").exists()
    figures = list((out_dir / "figures").glob("*.png"))
    assert len(figures) == 1 + 2 + 2  # totals, two metrics, two functions


def test_report_unknown_method_fails_cleanly(runner, tmp_path):
    config_path = write_config(tmp_path)
    assert runner.invoke(main, ["run", "--config", str(config_path)]).exit_code == 0
    result = runner.invoke(
        main, ["report", "--archive", str(tmp_path / "camp"), "--a", "pso", "--b", "nope"]
    )
    assert result.exit_code != 0
    assert "UnknownMethod" in result.output
    assert "nope" in result.output


def test_validate_fails_on_tampered_record(runner, tmp_path):
    config_path = write_config(tmp_path)
    assert runner.invoke(main, ["run", "--config", str(config_path)]).exit_code == 0
    victim = tmp_path / "camp" / record_relpath("rs", "neg_sphere_2d", 0)
    doc = json.loads(victim.read_text())
    doc["metrics"]["best_found"] += 1.0
    victim.write_text(json.dumps(doc))
    result = runner.invoke(main, ["validate", "--archive", str(tmp_path / "camp")])
    assert result.exit_code == 1
    assert "metrics" in result.output


def test_run_resume_restores_missing_records(runner, tmp_path):
    config_path = write_config(tmp_path)
    assert runner.invoke(main, ["run", "--config", str(config_path)]).exit_code == 0
    victim = tmp_path / "camp" / record_relpath("pso", "neg_rastrigin_2d", 1)
    original = victim.read_bytes()
    victim.unlink()
    result = runner.invoke(main, ["run", "--config", str(config_path), "--resume"])
    assert result.exit_code == 0, result.output
    restored = json.loads(victim.read_text())
    expected = json.loads(original)
    for doc in (restored, expected):
        doc.pop("duration_ms")
    assert restored == expected


def test_bad_config_fails_cleanly(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"methods": []}))
    result = runner.invoke(main, ["run", "--config", str(path)])
    assert result.exit_code != 0
    assert "FatalConfigError" in result.output


def test_installed_entry_point_smoke():
    proc = subprocess.run(["bench", "catalog"], capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)
