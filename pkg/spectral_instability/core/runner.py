"""
Command orchestration: run one RunConfig and write its artifacts.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from ..asymptotics.rates import asymptotic_report
from ..evaluation.acceptance import rate_fit_window, run_acceptance
from ..export.writers import write_csv, write_json
from ..optimization.spectrum_cache import get_spectrum
from ..pseudospectra.grid import grid
from ..semigroup.series import semigroup_reports
from ..specfun.quadrature import QuadratureConfig
from ..spectral.solver import fit_instability_rate, kappa_rows
from ..utils.exceptions import (
    ConfigurationError,
    PreconditionError,
    SpectralInstabilityError,
    get_error_summary,
    with_error_context,
)
from .schemas import Command, OutputFormat, RunConfig

logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """Exit status, written files and the error that stopped the run, if any."""

    exit_code: int
    files: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    error: Optional[SpectralInstabilityError] = None


@dataclass
class _Artifact:
    payload: Dict[str, Any]
    frames: Dict[str, pd.DataFrame]
    exit_code: int = 0
    summary: Dict[str, Any] = field(default_factory=dict)


def _header(config: RunConfig) -> Dict[str, Any]:
    params = config.oscillator_params()
    spectrum_config = config.discretization().resolved(params.k)
    return {
        "command": config.command.value,
        "params": asdict(params),
        "discretization": asdict(spectrum_config),
    }


def _spectrum(config: RunConfig, quadrature: QuadratureConfig) -> _Artifact:
    spectrum = get_spectrum(config.oscillator_params(), config.discretization())
    frame = pd.DataFrame(
        {
            "n": [pair.index for pair in spectrum.pairs],
            "re": spectrum.eigenvalues.real,
            "im": spectrum.eigenvalues.imag,
            "residual": spectrum.residuals,
        }
    )
    payload = {"rows": frame.to_dict(orient="records")}
    summary = {"eigenpairs": len(frame), "max_residual": float(spectrum.residuals.max())}
    return _Artifact(payload, {"spectrum": frame}, summary=summary)


def _kappa(config: RunConfig, quadrature: QuadratureConfig) -> _Artifact:
    params = config.oscillator_params()
    rows = kappa_rows(get_spectrum(params, config.discretization()))
    frame = pd.DataFrame(
        {
            "n": [row.n for row in rows],
            "modulus": [row.modulus for row in rows],
            "kappa": [row.kappa for row in rows],
            "log_kappa": [math.log(row.kappa) for row in rows],
        }
    )
    payload: Dict[str, Any] = {"rows": frame.to_dict(orient="records")}
    frames = {"kappa": frame}
    try:
        fit = fit_instability_rate(rows, params, rate_fit_window(len(rows)))
    except PreconditionError as e:
        logger.warning(f"Rate fit skipped: {e.message}")
        payload.update({"rate_fit": None, "rate_fit_reason": e.message})
        return _Artifact(payload, frames, summary={"rate_fit": "skipped"})

    fit_block = asdict(fit)
    fit_block["n_used"] = list(fit.n_used)
    payload["rate_fit"] = fit_block
    fit_row = {key: value for key, value in fit_block.items() if key != "n_used"}
    frames["kappa_fit"] = pd.DataFrame([fit_row])
    summary = {"slope": fit.compensated_slope, "rate_c": fit.rate_c, "gap": fit.relative_gap}
    return _Artifact(payload, frames, summary=summary)


def _asymptotics(config: RunConfig, quadrature: QuadratureConfig) -> _Artifact:
    report = asymptotic_report(config.oscillator_params(), quadrature).to_dict()
    frame = pd.DataFrame([report])
    return _Artifact({"report": report}, {"asymptotics": frame}, summary={"c_k": report["c_k"]})


def _pseudospectrum(config: RunConfig, quadrature: QuadratureConfig) -> _Artifact:
    result = grid(config.oscillator_params(), config.discretization(), config.grid_spec())
    summary = {key: result.metadata[key] for key in ("method", "truncation_warning")}
    return _Artifact(result.to_payload(), {"pseudospectrum": result.to_frame()}, summary=summary)


def _semigroup(config: RunConfig, quadrature: QuadratureConfig) -> _Artifact:
    reports = semigroup_reports(
        config.oscillator_params(), config.discretization(), config.t_values or []
    )
    documents = [report.to_dict() for report in reports]
    terms = pd.DataFrame(
        [
            {"t": report.t, "n": int(n), "term_norm": float(value)}
            for report in reports
            for n, value in zip(report.indices, report.term_norms)
        ]
    )
    summary_frame = pd.DataFrame(
        [
            {
                key: value
                for key, value in document.items()
                if key not in ("indices", "term_norms", "window")
            }
            for document in documents
        ]
    )
    summary = {f"t={report.t:g}": report.classification.value for report in reports}
    return _Artifact(
        {"reports": documents},
        {"semigroup_terms": terms, "semigroup": summary_frame},
        summary=summary,
    )


def _verify(config: RunConfig, quadrature: QuadratureConfig) -> _Artifact:
    results = run_acceptance(config.oscillator_params(), config.discretization())
    documents = [result.to_dict() for result in results]
    all_passed = all(result.passed for result in results)
    summary = {result.name: result.passed for result in results}
    return _Artifact(
        {"checks": documents, "all_passed": all_passed},
        {"verify": pd.DataFrame(documents)},
        exit_code=0 if all_passed else 2,
        summary=summary,
    )


_HANDLERS: Dict[Command, Callable[[RunConfig, QuadratureConfig], _Artifact]] = {
    Command.SPECTRUM: _spectrum,
    Command.KAPPA: _kappa,
    Command.ASYMPTOTICS: _asymptotics,
    Command.PSEUDOSPECTRUM: _pseudospectrum,
    Command.SEMIGROUP: _semigroup,
    Command.VERIFY: _verify,
}


def _prepare_output_dir(path: Path) -> None:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigurationError(f"Output directory {path} is not writable: {e}") from e
    if not path.is_dir():
        raise ConfigurationError(f"Output path {path} is not a directory")


def _write(config: RunConfig, artifact: _Artifact) -> List[Path]:
    files = []
    name = config.command.value
    if config.format in (OutputFormat.JSON, OutputFormat.BOTH):
        payload = {**_header(config), **artifact.payload}
        files.append(write_json(config.output_dir / f"{name}.json", payload))
    if config.format in (OutputFormat.CSV, OutputFormat.BOTH):
        for stem, frame in artifact.frames.items():
            files.append(write_csv(config.output_dir / f"{stem}.csv", frame))
    return files


def run(config: RunConfig, quadrature: Optional[QuadratureConfig] = None) -> RunResult:
    """
    Execute the command in config and write its artifacts.

    Returns:
        RunResult with exit code 0 on success, 1 on domain/configuration errors and
        2 on numerical-accuracy errors or failed acceptance checks
    """
    quadrature = quadrature or QuadratureConfig()
    logger.info(f"Running {config.command.value} for k={config.k} theta={config.theta}")
    try:
        _prepare_output_dir(config.output_dir)
        handler = with_error_context({"command": config.command.value})(_HANDLERS[config.command])
        artifact = handler(config, quadrature)
        files = _write(config, artifact)
    except SpectralInstabilityError as e:
        logger.error(f"{config.command.value} failed with {e.error_code}: {e.message}")
        logger.debug(f"Error summary: {get_error_summary(e)}")
        return RunResult(exit_code=e.exit_code, error=e)

    logger.info(f"{config.command.value} wrote {len(files)} file(s) to {config.output_dir}")
    return RunResult(exit_code=artifact.exit_code, files=files, summary=artifact.summary)
