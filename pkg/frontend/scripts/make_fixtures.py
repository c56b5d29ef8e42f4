"""Regenerate the dashboard test fixtures from the optbench report pipeline.

Run from frontend/:  python3 scripts/make_fixtures.py
Writes one report.json per scenario under tests/fixtures/.
"""
import shutil
import tempfile
from pathlib import Path

import numpy as np

from optbench.report import build_report, export_dashboard_bundle
from optbench.testing import (
    figure_one_values,
    random_campaign_values,
    write_synthetic_archive,
)

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def constant_runs(level, repeats=8):
    return [[level + 0.001 * r] for r in range(repeats)]


def engineered_values():
    # A dominates 3 functions, loses 1, ties 2: totals (3, 1, 2, 0)
    values = {"A": {}, "B": {}}
    for fid in ["neg_sphere_2d", "neg_rastrigin_2d", "neg_ackley_2d"]:
        values["A"][fid] = constant_runs(10.0)
        values["B"][fid] = constant_runs(0.0)
    values["A"]["neg_branin_2d"] = constant_runs(-5.0)
    values["B"]["neg_branin_2d"] = constant_runs(5.0)
    for fid in ["neg_beale_2d", "neg_bird_2d"]:
        values["A"][fid] = constant_runs(0.5)
        values["B"][fid] = constant_runs(0.5)
    return values


def comparable_values():
    # both methods drawn from the same generator: p-values mostly insignificant
    rng = np.random.default_rng(42)
    fids = ["neg_sphere_2d", "neg_rastrigin_2d", "neg_ackley_2d",
            "neg_griewank_2d", "neg_branin_2d", "neg_beale_2d",
            "neg_bird_2d", "neg_bohachevsky_2d"]
    values = {"A": {}, "B": {}}
    for fid in fids:
        for method in ("A", "B"):
            values[method][fid] = [
                list(np.sort(rng.uniform(0.0, 1.0, size=6)).cumsum())
                for _ in range(10)
            ]
    return values


def main():
    if FIXTURES.exists():
        shutil.rmtree(FIXTURES)
    FIXTURES.mkdir(parents=True)
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        fig1 = write_synthetic_archive(tmp / "fig1", figure_one_values(), budget=40)
        export_dashboard_bundle(build_report(fig1, "A", "B"), FIXTURES / "fig1")

        eng = write_synthetic_archive(tmp / "eng", engineered_values(), budget=5)
        export_dashboard_bundle(build_report(eng, "A", "B"), FIXTURES / "engineered")
        # same archive with the pair swapped: B dominant, green mass in bin 0
        export_dashboard_bundle(build_report(eng, "B", "A"), FIXTURES / "bdominant")

        comp = write_synthetic_archive(tmp / "comp", comparable_values(), budget=6)
        export_dashboard_bundle(build_report(comp, "A", "B"), FIXTURES / "comparable")

        rng = np.random.default_rng(7)
        selfv = random_campaign_values(rng, n_functions=5)
        selfa = write_synthetic_archive(tmp / "self", selfv, budget=12)
        export_dashboard_bundle(build_report(selfa, "A", "A"), FIXTURES / "selfcmp")

    for p in sorted(FIXTURES.rglob("report.json")):
        print(p.relative_to(FIXTURES.parent.parent))


if __name__ == "__main__":
    main()
