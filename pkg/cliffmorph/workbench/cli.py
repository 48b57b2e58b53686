"""Command-line workbench for product tables, verification and field demos."""

from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path

import msgspec
import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from cliffmorph.algebra.models import CliffordError
from cliffmorph.config import get_settings
from cliffmorph.fields.models import DiracForm
from cliffmorph.morph.codec import encode_table, save_table
from cliffmorph.morph.tables import ProductTable, base_table, tilt_table, vee_table

from .checks import check_names, run_checks
from .evaluator import evaluate_text, render
from .models import (
    DiracReport,
    OutputMode,
    ParseError,
    SessionConfig,
    parse_signature,
)
from .reports import dirac_report, eval_report, plan_report, selfdual_report

# Load environment variables
load_dotenv()

app = typer.Typer(
    help="Exact Clifford algebra workbench: vee and tilt products, Dirac and "
    "Hodge identities",
    no_args_is_help=True,
)
console = Console(highlight=False)

_logging_configured: bool = False


def configure_logging(level: str | None = None) -> None:
    """Send log records to stderr through rich, once per process."""
    global _logging_configured
    if _logging_configured:
        return

    level = (level or get_settings().log_level).upper()
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.addHandler(handler)

    _logging_configured = True


def session(
    signature: str,
    preserve: int = 0,
    structured: bool = False,
    seed: int | None = None,
) -> SessionConfig:
    """Session config from flags; bad values become usage errors."""
    try:
        return SessionConfig.from_flags(signature, preserve, structured, seed)
    except ValueError as e:
        raise typer.BadParameter(str(e)) from e


def parse_fraction(text: str, name: str) -> Fraction:
    """Rational flag value; bad values become usage errors."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise typer.BadParameter(f"{name} must be a rational, got {text!r}") from e


def emit(report: msgspec.Struct) -> None:
    """Print a report as one JSON line."""
    typer.echo(msgspec.json.encode(report).decode())


def check_table(title: str, rows: list[tuple[str, bool, str]]) -> Table:
    """Rich table of check rows."""
    table = Table(title=title, show_header=True, header_style="bold cyan")
    table.add_column("Check", style="cyan")
    table.add_column("Result", justify="center")
    table.add_column("Detail")
    for name, passed, detail in rows:
        verdict = "[green]pass[/green]" if passed else "[red]FAIL[/red]"
        table.add_row(name, verdict, detail)
    return table


@app.callback()
def main(
    log_level: str | None = typer.Option(
        None, "--log-level", help="Logging level (defaults to CLIFFMORPH_LOG_LEVEL)"
    ),
) -> None:
    """Clifford product tables, signature morphs and invariant checks."""
    if log_level is not None and not isinstance(
        logging.getLevelName(log_level.upper()), int
    ):
        raise typer.BadParameter(f"Unknown log level {log_level!r}")
    configure_logging(log_level)


@app.command(name="table", help="Emit a product table as a JSON document")
def table_command(
    signature: str = typer.Option(
        "4,0", "--signature", "-s", help="'p,q' or a square pattern such as '+---'"
    ),
    vee: list[int] | None = typer.Option(
        None, "--vee", help="Apply a vee about this generator (repeatable, in order)"
    ),
    tilt: bool = typer.Option(False, "--tilt", help="Apply a tilt after the vees"),
    output: Path | None = typer.Option(
        None, "--output", "-o", help="Write the document here instead of stdout"
    ),
) -> None:
    cfg = session(signature)
    try:
        table: ProductTable = base_table(cfg.signature)
        for mu in vee or []:
            table = vee_table(table, mu)
        if tilt:
            table = tilt_table(table)
    except CliffordError as e:
        raise typer.BadParameter(str(e)) from e

    if output is None:
        typer.echo(encode_table(table).decode())
    else:
        save_table(table, output)
        console.print(f"Wrote {table.provenance} to {output}")


@app.command(help="Run the invariant suite; exit 1 on any failure")
def verify(
    signature: str = typer.Option("4,0", "--signature", "-s", help="'p,q' or '+---'"),
    preserve: int = typer.Option(0, "--preserve", "-p", help="Preserved index"),
    seed: int | None = typer.Option(None, "--seed", help="Seed for sampled checks"),
    structured: bool = typer.Option(False, "--structured", help="Emit JSON"),
    table_file: Path | None = typer.Option(
        None, "--table-file", help="Also check a table document against its base"
    ),
    only: list[str] | None = typer.Option(
        None, "--only", help="Run only the named checks (repeatable)"
    ),
) -> None:
    cfg = session(signature, preserve, structured, seed)
    unknown = set(only or []) - set(check_names())
    if unknown:
        raise typer.BadParameter(f"Unknown checks {sorted(unknown)}")

    report = run_checks(cfg, table_file, only)
    if cfg.output is OutputMode.STRUCTURED:
        emit(report)
    else:
        title = f"{report.signature}, preserve {report.preserve}, seed {report.seed}"
        rows = [(c.name, c.passed, c.detail) for c in report.checks]
        console.print(check_table(title, rows))
        for result in report.checks:
            if result.counterexample is not None:
                console.print(f"[red]{result.name}[/red]: {result.counterexample}")
    if not report.passed:
        raise typer.Exit(1)


@app.command(help="Plan a chain of vees and tilts between two signatures")
def plan(
    signature: str = typer.Option("4,0", "--signature", "-s", help="Source"),
    target: str = typer.Option("1,3", "--target", "-t", help="Target signature"),
    structured: bool = typer.Option(False, "--structured", help="Emit JSON"),
) -> None:
    cfg = session(signature, structured=structured)
    try:
        report = plan_report(cfg.signature, parse_signature(target))
    except (ValueError, CliffordError) as e:
        raise typer.BadParameter(str(e)) from e

    if cfg.output is OutputMode.STRUCTURED:
        emit(report)
    else:
        steps = ", ".join(report.steps) or "no steps"
        console.print(f"{report.source} -> {report.target}: {steps}")
        console.print(f"Built {report.provenance}")
        if report.verified:
            console.print(f"[green]Table equals the base product of {report.target}")
        else:
            console.print(f"[red]Table differs at {report.first_mismatch}")
    if not report.verified:
        raise typer.Exit(1)


def _print_dirac(report: DiracReport) -> None:
    """Print both component systems and the recoding found."""
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Equation", style="cyan")
    table.add_column(report.minkowski["form"])
    table.add_column(report.other["form"])
    left, right = report.minkowski["equations"], report.other["equations"]
    for blade in sorted(set(left) | set(right)):
        table.add_row(
            blade,
            _equation_text(left.get(blade, [])),
            _equation_text(right.get(blade, [])),
        )
    console.print(table)
    if report.recoding is None:
        console.print("No diagonal sign recoding relates the two systems")
    else:
        flipped = [b for b, s in report.recoding["unknowns"].items() if s == -1]
        console.print(f"Recoding flips psi on {', '.join(flipped)}")
        if report.recoding["potential"]:
            console.print(f"Potential signs {report.recoding['potential']}")
    verdict = "[green]equivalent" if report.equivalent else "[red]not equivalent"
    console.print(f"m = {report.mass}, e = {report.charge}: {verdict}")


def _equation_text(terms: list[list[str]]) -> str:
    """One equation's terms as ``coeff factor(blade)`` text."""
    return " ".join(f"{coeff} {factor}({blade})" for blade, factor, coeff in terms)


@app.command(help="Compare the Minkowski and vee Dirac-Hestenes systems")
def dirac(
    mass: str = typer.Option("1", "--mass", "-m", help="Mass, a rational"),
    charge: str = typer.Option("1", "--charge", "-e", help="Charge, a rational"),
    with_potential: bool = typer.Option(
        False, "--with-potential", help="Include the interaction term"
    ),
    against: DiracForm = typer.Option(
        DiracForm.VEE, "--against", help="Form to compare with: vee or euclidean"
    ),
    seed: int | None = typer.Option(None, "--seed", help="Seed for sample fields"),
    structured: bool = typer.Option(False, "--structured", help="Emit JSON"),
) -> None:
    m, e = parse_fraction(mass, "--mass"), parse_fraction(charge, "--charge")
    seed = get_settings().default_seed if seed is None else seed
    try:
        report = dirac_report(m, e, with_potential, against, seed)
    except ValueError as err:
        raise typer.BadParameter(str(err)) from err

    if structured:
        emit(report)
    else:
        _print_dirac(report)


@app.command(help="Self-dual (or anti-self-dual) 2-forms and their checks")
def selfdual(
    sign: int = typer.Option(1, "--sign", help="+1 for self-dual, -1 for anti"),
    structured: bool = typer.Option(False, "--structured", help="Emit JSON"),
) -> None:
    try:
        report = selfdual_report(sign)
    except ValueError as e:
        raise typer.BadParameter(str(e)) from e

    if structured:
        emit(report)
    else:
        for field_strength in report.basis:
            console.print(f"F = {field_strength}")
        rows = [(c.name, c.passed, c.detail) for c in report.checks]
        console.print(check_table(f"Sign {report.sign:+d}", rows))
    if not report.passed:
        raise typer.Exit(1)


@app.command(name="eval", help="Evaluate one multivector expression")
def eval_command(
    expression: str = typer.Argument(..., help="Expression, e.g. 'e01 v e02'"),
    signature: str = typer.Option("4,0", "--signature", "-s", help="'p,q' or '+---'"),
    preserve: int = typer.Option(0, "--preserve", "-p", help="Preserved index"),
    structured: bool = typer.Option(False, "--structured", help="Emit JSON"),
) -> None:
    cfg = session(signature, preserve, structured)
    try:
        value = evaluate_text(expression, cfg)
    except ParseError as e:
        raise typer.BadParameter(str(e)) from e

    if cfg.output is OutputMode.STRUCTURED:
        emit(eval_report(expression, cfg, value))
    else:
        typer.echo(render(value))


if __name__ == "__main__":
    app()
