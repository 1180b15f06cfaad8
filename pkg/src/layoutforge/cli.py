"""Command-line entry points: batch scripts, one-shot solving, and the service."""
from __future__ import annotations

from pathlib import Path

import click

from . import __version__
from .errors import LayoutForgeError, ScriptError
from .protocol import SolveReportModel
from .scripts import run_script
from .solver import DEFAULT_CANDIDATE_CAP, load_environment
from .solver import solve as solve_statements
from .statements import import_csv

DEFAULT_PORT = 8137


@click.group()
@click.version_option(version=__version__, prog_name="layoutforge")
def main() -> None:
    """Scene constraint engine: command scripts, layout solving, and the session service."""


@main.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def run(script: Path) -> None:
    """Execute a command script, stopping at the first failing line."""
    try:
        run_script(script)
    except ScriptError as exc:
        raise click.ClickException(str(exc)) from None


@main.command()
@click.option(
    "--constraints",
    "constraints_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Constraint CSV to satisfy.",
)
@click.option(
    "--env",
    "environment_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Environment file naming the planes and grid resolution.",
)
@click.option("--cap", type=int, default=DEFAULT_CANDIDATE_CAP, show_default=True, help="Stop after this many layouts.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=Path("solve_report.json"),
    show_default=True,
    help="Where to write the JSON report.",
)
def solve(constraints_path: Path, environment_path: Path, cap: int, out: Path) -> None:
    """Enumerate layouts satisfying a constraint CSV inside an environment."""
    try:
        statements = import_csv(constraints_path.read_bytes())
        environment = load_environment(environment_path)
        report = solve_statements(statements, environment, cap=cap)
    except LayoutForgeError as exc:
        raise click.ClickException(f"{exc.code}: {exc}") from None
    out.write_text(SolveReportModel.from_report(report).model_dump_json(indent=2) + "\n", encoding="utf-8")
    status = "exhausted" if report.exhausted else "capped"
    click.echo(f"{len(report.candidates)} candidate layout(s) ({status}); report written to {out}")


@main.command()
@click.option(
    "--port",
    type=int,
    default=DEFAULT_PORT,
    show_default=True,
    envvar="LAYOUTFORGE_PORT",
    help="TCP port (env var LAYOUTFORGE_PORT).",
)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port: int, host: str) -> None:
    """Start the HTTP/WebSocket session service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)
