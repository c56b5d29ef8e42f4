"""The ``bench`` command line: run campaigns, compare methods, audit archives."""
from __future__ import annotations

import json
from pathlib import Path

import click

from .benchfn import catalog_json
from .errors import BenchError
from .report import (
    build_report,
    export_dashboard_bundle,
    render_text_summary,
    write_outcomes_csv,
)
from .runner import (
    CampaignArchive,
    CampaignConfig,
    FAILED,
    resume_campaign,
    run_campaign,
    validate_archive,
)


@click.group()
def main() -> None:
    """Benchmark harness comparing black-box optimizers with U-test analysis."""


def _fail(exc: BenchError) -> None:
    raise click.ClickException(f"{type(exc).__name__}: {exc}")


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON file mirroring CampaignConfig.")
@click.option("--resume", is_flag=True,
              help="Fill in missing or failed records of an existing archive.")
def run(config_path: str, resume: bool) -> None:
    """Execute every (method, function, repeat) run of a campaign."""
    try:
        config = CampaignConfig.from_dict(json.loads(Path(config_path).read_text()))
        if resume:
            archive = resume_campaign(config, config.output_dir)
        else:
            archive = run_campaign(config)
    except (BenchError, json.JSONDecodeError) as exc:
        _fail(exc)
    entries = archive.run_entries()
    failed = [e for e in entries if e["status"] == FAILED]
    click.echo(f"{len(entries)} runs archived under {archive.root}")
    if failed:
        click.echo(f"warning: {len(failed)} runs failed; see their diagnostics:")
        for entry in failed[:10]:
            click.echo(f"  {entry['path']}")


@main.command()
@click.option("--archive", "archive_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--a", "method_a", required=True, help="Method id for side A.")
@click.option("--b", "method_b", required=True, help="Method id for side B.")
@click.option("--alpha", type=float, default=None,
              help="Significance level [default: the campaign's alpha, 0.01 unless configured].")
@click.option("--out", "out_dir", default=None, type=click.Path(file_okay=False),
              help="Directory for report.json, outcomes.csv, and figures.")
def report(archive_dir: str, method_a: str, method_b: str,
           alpha: float | None, out_dir: str | None) -> None:
    """Compare two archived methods; print the total-performance table."""
    try:
        bundle = build_report(CampaignArchive(archive_dir), method_a, method_b, alpha)
    except BenchError as exc:
        _fail(exc)
    click.echo(render_text_summary(bundle), nl=False)
    if out_dir:
        # figures pull in matplotlib; keep that import out of the fast paths
        from .figures import render_all_figures

        try:
            out = export_dashboard_bundle(bundle, out_dir)
            write_outcomes_csv(bundle, out / "outcomes.csv")
            figures = render_all_figures(bundle, out / "figures")
        except BenchError as exc:
            _fail(exc)
        click.echo(f"\nwrote {out / 'report.json'}")
        click.echo(f"wrote {out / 'outcomes.csv'}")
        click.echo(f"wrote {len(figures)} figures under {out / 'figures'}")


@main.command()
def catalog() -> None:
    """Print the benchmark function catalog as JSON."""
    click.echo(json.dumps(catalog_json(), indent=2))


@main.command()
@click.option("--archive", "archive_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
def validate(archive_dir: str) -> None:
    """Re-derive every stored trace and metric; fail on any mismatch."""
    try:
        archive = CampaignArchive(archive_dir)
        problems = validate_archive(archive)
    except BenchError as exc:
        _fail(exc)
    if problems:
        for problem in problems:
            click.echo(problem, err=True)
        raise SystemExit(1)
    click.echo(f"archive consistent: {len(archive.run_entries())} records verified")
