"""
Command-line interface for spectral-instability.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from omegaconf import OmegaConf
from pydantic import ValidationError as PydanticValidationError
from rich import print as rprint
from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from .configs.config import compose_config, load_config_file
from .core.runner import RunResult, run
from .core.schemas import Command, RunConfig
from .specfun.quadrature import QuadratureConfig
from .utils.exceptions import ConfigurationError, SpectralInstabilityError, format_error_for_user
from .utils.logging import setup_logging

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Spectral instability of the rotated anharmonic oscillators -d^2/dx^2 + e^{i theta} x^{2k}"
)
console = Console()

DEGREE_MARKERS = ("deg", "°")

K_OPTION = typer.Option(None, "--k", help="Degree parameter k >= 1 of the potential x^{2k}")
THETA_OPTION = typer.Option(None, "--theta", help="Rotation angle theta in radians")
BASIS_OPTION = typer.Option(None, "--basis-size", help="Hermite basis size N")
NMAX_OPTION = typer.Option(None, "--n-max", help="Number of trusted eigenpairs")
SCALE_OPTION = typer.Option(None, "--scale", help="Coordinate dilation (default: Weyl-balanced)")
GRID_OPTION = typer.Option(None, "--grid", help="Resolvent grid 're0,re1,im0,im1,nx,ny'")
T_OPTION = typer.Option(None, "--t", help="Comma-separated semigroup times")
OUT_OPTION = typer.Option(None, "--out", "-o", help="Output directory")
FORMAT_OPTION = typer.Option(None, "--format", "-f", help="Artifact format: json, csv or both")
PRESET_OPTION = typer.Option("default", "--preset", help="Discretization preset")
CONFIG_OPTION = typer.Option(
    None, "--config", "-c", help="YAML run file; its values override flags"
)
LOG_LEVEL_OPTION = typer.Option(None, "--log-level", help="Logging level")
VERBOSE_OPTION = typer.Option(False, "--verbose", "-v", help="Verbose output")


def parse_theta(text: str) -> float:
    """Parse an angle in radians; values marked as degrees are rejected."""
    cleaned = text.strip().lower()
    if cleaned.endswith(DEGREE_MARKERS):
        raise ConfigurationError(
            f"theta={text!r} looks like degrees; give the angle in radians",
            details={"theta": text},
        )
    try:
        return float(cleaned)
    except ValueError as e:
        raise ConfigurationError(f"Cannot parse theta={text!r} as radians") from e


def parse_times(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigurationError(f"Cannot parse --t {text!r} as a comma list of reals") from e


@dataclass(frozen=True)
class Invocation:
    """A validated run together with the quadrature and logging presets it runs under."""

    config: RunConfig
    quadrature: QuadratureConfig
    log_level: str
    log_format: str


def build_invocation(command: Command, flags: Dict[str, Any]) -> Invocation:
    """
    Merge preset, flags and run file (in increasing precedence) into an Invocation.

    Raises:
        ConfigurationError: On unparseable values or a failed schema check
    """
    file_values = load_config_file(flags["config"]) if flags.get("config") else {}
    preset_name = file_values.get("preset", flags.get("preset") or "default")
    composed = compose_config([f"discretization={preset_name}"])
    preset = OmegaConf.to_object(composed.discretization)
    output = OmegaConf.to_object(composed.output)
    quadrature = OmegaConf.to_object(composed.quadrature).to_config()

    merged: Dict[str, Any] = {
        "basis_size": preset.basis_size,
        "n_max": preset.n_max,
        "scale": preset.scale,
        "out": output.output_dir,
        "format": output.format,
    }
    merged.update({key: value for key, value in flags.items() if value is not None})
    merged.update(file_values)

    if "command" in file_values and file_values["command"] != command.value:
        raise ConfigurationError(
            f"Run file is for command {file_values['command']!r}, invoked {command.value!r}"
        )
    if merged.get("k") is None or merged.get("theta") is None:
        raise ConfigurationError("Both --k and --theta are required")

    theta = merged["theta"]
    times = merged.get("t")
    try:
        config = RunConfig(
            command=command,
            k=merged["k"],
            theta=parse_theta(theta) if isinstance(theta, str) else theta,
            basis_size=merged["basis_size"],
            n_max=merged["n_max"],
            scale=merged.get("scale"),
            grid=merged.get("grid"),
            t_values=parse_times(times) if isinstance(times, str) else times,
            output_dir=Path(merged["out"]),
            format=merged["format"],
        )
    except PydanticValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        raise ConfigurationError(f"Invalid run configuration: {messages}") from e
    return Invocation(config, quadrature, output.log_level, output.log_format)


def _report(result: RunResult, verbose: bool) -> None:
    if result.error is not None:
        rprint(f"[red]Error: {format_error_for_user(result.error, include_details=verbose)}[/red]")
        return

    table = Table(title="Run summary")
    table.add_column("Key", style="cyan")
    table.add_column("Value", style="magenta")
    for key, value in result.summary.items():
        table.add_row(str(key), str(value))
    for path in result.files:
        table.add_row("file", str(path))
    console.print(table)
    if result.exit_code == 0:
        rprint("[green]Done[/green]")
    else:
        rprint(f"[yellow]Finished with exit code {result.exit_code}[/yellow]")


def _execute(command: Command, flags: Dict[str, Any]) -> None:
    verbose = flags.pop("verbose", False)
    log_level = flags.pop("log_level", None)

    try:
        invocation = build_invocation(command, flags)
    except SpectralInstabilityError as e:
        rprint(f"[red]Error: {format_error_for_user(e, include_details=verbose)}[/red]")
        raise typer.Exit(e.exit_code)

    if verbose:
        setup_logging(level=log_level or "DEBUG", format_style="detailed")
    else:
        setup_logging(level=log_level or invocation.log_level, format_style=invocation.log_format)

    config = invocation.config
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        TimeElapsedColumn(),
        transient=True,
        console=console,
    ) as progress:
        progress.add_task(f"{command.value} k={config.k} theta={config.theta}", total=None)
        result = run(config, invocation.quadrature)

    _report(result, verbose)
    raise typer.Exit(result.exit_code)


@app.command()
def spectrum(
    k: Optional[int] = K_OPTION,
    theta: Optional[str] = THETA_OPTION,
    basis_size: Optional[int] = BASIS_OPTION,
    n_max: Optional[int] = NMAX_OPTION,
    scale: Optional[float] = SCALE_OPTION,
    out: Optional[str] = OUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    preset: str = PRESET_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Eigenvalues and residuals (n, Re lambda, Im lambda, residual)."""
    _execute(Command.SPECTRUM, dict(locals()))


@app.command()
def kappa(
    k: Optional[int] = K_OPTION,
    theta: Optional[str] = THETA_OPTION,
    basis_size: Optional[int] = BASIS_OPTION,
    n_max: Optional[int] = NMAX_OPTION,
    scale: Optional[float] = SCALE_OPTION,
    out: Optional[str] = OUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    preset: str = PRESET_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Instability indices (n, |lambda_n|, kappa_n, log kappa_n) with a growth-rate fit."""
    _execute(Command.KAPPA, dict(locals()))


@app.command()
def asymptotics(
    k: Optional[int] = K_OPTION,
    theta: Optional[str] = THETA_OPTION,
    out: Optional[str] = OUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Closed-form asymptotic constants (saddle, rate, Weyl law, thresholds)."""
    _execute(Command.ASYMPTOTICS, dict(locals()))


@app.command()
def pseudospectrum(
    k: Optional[int] = K_OPTION,
    theta: Optional[str] = THETA_OPTION,
    grid: Optional[str] = GRID_OPTION,
    basis_size: Optional[int] = BASIS_OPTION,
    n_max: Optional[int] = NMAX_OPTION,
    scale: Optional[float] = SCALE_OPTION,
    out: Optional[str] = OUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    preset: str = PRESET_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Resolvent norms of the Galerkin matrix on a rectangular grid."""
    _execute(Command.PSEUDOSPECTRUM, dict(locals()))


@app.command()
def semigroup(
    k: Optional[int] = K_OPTION,
    theta: Optional[str] = THETA_OPTION,
    t: Optional[str] = T_OPTION,
    basis_size: Optional[int] = BASIS_OPTION,
    n_max: Optional[int] = NMAX_OPTION,
    scale: Optional[float] = SCALE_OPTION,
    out: Optional[str] = OUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    preset: str = PRESET_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Projection-series term norms and convergence classification per time."""
    _execute(Command.SEMIGROUP, dict(locals()))


@app.command()
def verify(
    k: Optional[int] = K_OPTION,
    theta: Optional[str] = THETA_OPTION,
    basis_size: Optional[int] = BASIS_OPTION,
    n_max: Optional[int] = NMAX_OPTION,
    scale: Optional[float] = SCALE_OPTION,
    out: Optional[str] = OUT_OPTION,
    format: Optional[str] = FORMAT_OPTION,
    preset: str = PRESET_OPTION,
    config: Optional[str] = CONFIG_OPTION,
    log_level: Optional[str] = LOG_LEVEL_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """Run the acceptance checks that apply to (k, theta); exit 2 if any fails."""
    _execute(Command.VERIFY, dict(locals()))


def main():
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
