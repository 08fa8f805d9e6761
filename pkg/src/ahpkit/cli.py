"""Command-line interface.

Exit codes: 0 success, 2 input/validation failure, 1 internal error.
Set ``AHP_RSB_NU`` to a JSON object to override the reversal weights used
when aggregating the global possibility degree.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import __version__
from .formats import (
    ParseError,
    load_model,
    matrix_to_csv,
    matrix_to_json,
    parse_action_json,
    reversal_weights_from_json,
    sha256_of,
)
from .hierarchy import DeleteAlternative, DeleteCriterion, analyze_matrix, evaluate, what_if
from .pcm import AdmissibilityError, mirror_normalize, to_interval, uncertainty_index
from .report import AnalysisReport, render_matrix_section, render_report

NU_ENV = "AHP_RSB_NU"


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _provenance(paths: list[str]) -> dict:
    return {
        "inputs": {p: sha256_of(p) for p in paths},
        "tool": "ahpkit",
        "version": __version__,
    }


def _reversal_override(m: int):
    raw = os.environ.get(NU_ENV)
    if not raw:
        return None
    return reversal_weights_from_json(raw, m)


@click.group()
@click.version_option(version=__version__, prog_name="ahpkit")
def main() -> None:
    """Analyze pairwise comparison matrices and decision hierarchies."""


@main.command()
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
@click.option("--mirror", is_flag=True, help="Repair pairs with product > 1 before analysis.")
def analyze(matrix_file: str, as_json: bool, mirror: bool) -> None:
    """Per-matrix diagnostics: symmetry breaking, consistency, priorities, reversal."""
    matrix = _load_matrix(matrix_file, mirror)
    section = analyze_matrix(matrix, name=matrix_file)
    if as_json:
        report = AnalysisReport((section,), None).with_provenance(_provenance([matrix_file]))
        click.echo(report.to_json(), nl=False)
    else:
        click.echo(render_matrix_section(section))


def _load_matrix(path: str, mirror: bool):
    from pathlib import Path

    from .formats import parse_matrix_csv, parse_matrix_json
    from .pcm import validate

    try:
        text = Path(path).read_text(encoding="utf-8")
        parse = parse_matrix_json if path.lower().endswith(".json") else parse_matrix_csv
        labels, data = parse(text)
        if mirror:
            return mirror_normalize(data, labels)
        return validate(data, labels)
    except (ParseError, AdmissibilityError) as exc:
        _fail(str(exc), 2)


@main.command()
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
def hierarchy(model_file: str, as_json: bool) -> None:
    """Evaluate a full hierarchy document."""
    try:
        model = load_model(model_file)
        report = evaluate(model, weights=_reversal_override(model.m))
    except (ParseError, AdmissibilityError, ValueError) as exc:
        _fail(str(exc), 2)
    if as_json:
        click.echo(report.with_provenance(_provenance([model_file])).to_json(), nl=False)
    else:
        click.echo(render_report(report), nl=False)


@main.command()
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--delete-alt", "delete_alt", help="Delete an alternative by label.")
@click.option("--add-alt", "add_alt", type=click.Path(exists=True, dir_okay=False),
              help="Add an alternative from an action JSON file.")
@click.option("--delete-crit", "delete_crit", help="Delete a criterion by label.")
@click.option("--add-crit", "add_crit", type=click.Path(exists=True, dir_okay=False),
              help="Add a criterion from an action JSON file.")
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
def whatif(model_file: str, delete_alt, add_alt, delete_crit, add_crit, as_json: bool) -> None:
    """Preview the effect of adding or deleting an alternative or criterion."""
    given = [x for x in (delete_alt, add_alt, delete_crit, add_crit) if x]
    if len(given) != 1:
        _fail("choose exactly one of --delete-alt/--add-alt/--delete-crit/--add-crit", 2)
    try:
        model = load_model(model_file)
        if delete_alt:
            action = DeleteAlternative(delete_alt)
        elif delete_crit:
            action = DeleteCriterion(delete_crit)
        else:
            from pathlib import Path

            action = parse_action_json(Path(add_alt or add_crit).read_text(encoding="utf-8"))
        result = what_if(model, action, weights=_reversal_override(model.m))
    except (ParseError, AdmissibilityError, KeyError, ValueError) as exc:
        _fail(str(exc), 2)
    if as_json:
        click.echo(json.dumps(result.to_dict(), indent=2))
    else:
        click.echo(f"action             {result.action}")
        click.echo(f"ranking before     {' > '.join(result.ranking_before)}")
        click.echo(f"ranking after      {' > '.join(result.ranking_after)}")
        click.echo(f"order preserved    {'yes' if result.ranking_preserved else 'no'}")
        click.echo(f"equilibrium        {'yes' if result.equilibrium else 'no'}")
        click.echo(f"basis              {result.theorem_basis}")
        click.echo(f"global p_d         {result.pd_summary['global_pd']:.4f}")


@main.command()
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit machine-readable JSON.")
@click.option("--mirror", is_flag=True, help="Repair pairs with product > 1 before analysis.")
def interval(matrix_file: str, as_json: bool, mirror: bool) -> None:
    """Show the equivalent interval judgments and their uncertainty index."""
    matrix = _load_matrix(matrix_file, mirror)
    iv = to_interval(matrix)
    ui = uncertainty_index(iv)
    if as_json:
        obj = {
            "labels": list(iv.labels),
            "lower": [[float(v) for v in row] for row in iv.lower],
            "upper": [[float(v) for v in row] for row in iv.upper],
            "uncertainty_index": ui,
        }
        click.echo(json.dumps(obj, indent=2))
    else:
        click.echo(f"interval judgments for {matrix_file}")
        for i, label in enumerate(iv.labels):
            cells = " ".join(
                f"[{iv.lower[i, j]:.4f},{iv.upper[i, j]:.4f}]" for j in range(iv.n)
            )
            click.echo(f"  {label:<12} {cells}")
        click.echo(f"  uncertainty index  {ui:.4f}")


@main.command()
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "fmt", type=click.Choice(["json", "csv"]), default="json",
              help="Output format.")
@click.option("--mirror", is_flag=True, help="Repair pairs with product > 1 first.")
def convert(matrix_file: str, fmt: str, mirror: bool) -> None:
    """Re-serialize a matrix file in canonical form."""
    matrix = _load_matrix(matrix_file, mirror)
    click.echo(matrix_to_json(matrix) if fmt == "json" else matrix_to_csv(matrix), nl=False)


@main.command()
@click.option("--port", default=8000, show_default=True, help="Listen port.")
@click.option("--host", default="127.0.0.1", show_default=True, help="Bind address.")
@click.option("--db", "db_path", default="ahpkit-sessions.db", show_default=True,
              help="Session database file.")
def serve(port: int, host: str, db_path: str) -> None:
    """Run the interactive session service."""
    import uvicorn

    from .service import SessionStore, create_app

    app = create_app(SessionStore(db_path))
    uvicorn.run(app, host=host, port=port)


def run_cli(argv: list[str] | None = None) -> int:
    """Invoke the CLI programmatically; returns the exit code."""
    try:
        main.main(args=argv, standalone_mode=False)
        return 0
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.ClickException as exc:
        exc.show()
        return 2
    except (ParseError, AdmissibilityError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        click.echo(f"internal error: {exc}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(run_cli())
