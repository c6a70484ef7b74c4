"""
Unit tests for CLI functionality.
"""

import json

import pytest
from typer.testing import CliRunner

from spectral_instability import cli as cli_module
from spectral_instability.cli import app, build_invocation, parse_theta, parse_times
from spectral_instability.core import Command
from spectral_instability.optimization import clear_cache
from spectral_instability.specfun import QuadratureConfig
from spectral_instability.utils.exceptions import ConfigurationError
from spectral_instability.utils.logging import setup_logging


def invoke(runner, command_line, out):
    """Run a whitespace-separated command line with --out appended."""
    return runner.invoke(app, command_line.split() + ["--out", str(out)])


def without_metadata(path):
    document = json.loads(path.read_text())
    document.pop("metadata")
    return document


@pytest.mark.unit
class TestParsing:
    """Test flag parsing helpers."""

    def test_theta_radians(self):
        assert parse_theta(" 1.5 ") == 1.5

    @pytest.mark.parametrize("text", ["90deg", "45°", "30 DEG"])
    def test_theta_degrees_rejected(self, text):
        with pytest.raises(ConfigurationError) as exc_info:
            parse_theta(text)
        assert "radians" in exc_info.value.message

    def test_theta_garbage(self):
        with pytest.raises(ConfigurationError):
            parse_theta("pi/2")

    def test_times(self):
        assert parse_times("0.1,0.5, 2") == [0.1, 0.5, 2.0]
        with pytest.raises(ConfigurationError):
            parse_times("0.1,x")


@pytest.fixture
def tuned_presets(monkeypatch):
    """Compose with a tightened quadrature preset and an INFO/json output preset."""
    compose = cli_module.compose_config
    extra = [
        "quadrature.rel_tol=1e-10",
        "quadrature.rule_order=21",
        "output.log_level=INFO",
        "output.log_format=json",
    ]
    monkeypatch.setattr(cli_module, "compose_config", lambda overrides: compose(overrides + extra))


@pytest.mark.unit
class TestBuildInvocation:
    """Test merging of presets, flags and run files."""

    def test_default_presets(self):
        invocation = build_invocation(Command.ASYMPTOTICS, {"k": 1, "theta": 0.5})
        assert invocation.quadrature == QuadratureConfig()
        assert invocation.log_level == "WARNING"
        assert invocation.log_format == "simple"
        assert invocation.config.basis_size == 200

    def test_presets_reach_invocation(self, tuned_presets):
        invocation = build_invocation(Command.ASYMPTOTICS, {"k": 1, "theta": 0.5})
        assert invocation.quadrature == QuadratureConfig(rel_tol=1e-10, rule_order=21)
        assert invocation.log_level == "INFO"
        assert invocation.log_format == "json"

    def test_missing_k(self):
        with pytest.raises(ConfigurationError):
            build_invocation(Command.SPECTRUM, {"theta": 0.5})

@pytest.mark.unit
@pytest.mark.cli
class TestCLI:
    """Test CLI interface functionality."""

    @pytest.fixture
    def runner(self):
        """Create CLI test runner."""
        return CliRunner()

    @pytest.fixture(autouse=True)
    def restore_logging(self):
        yield
        setup_logging(level="WARNING", format_style="simple")

    def test_cli_help(self, runner):
        """Test CLI help command."""
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        for command in ("spectrum", "kappa", "asymptotics", "pseudospectrum", "semigroup"):
            assert command in result.stdout

    def test_verify_selfadjoint_harmonic(self, runner, temp_dir):
        """verify --k 1 --theta 0 passes every check."""
        result = invoke(runner, "verify --k 1 --theta 0", temp_dir)
        assert result.exit_code == 0, result.stdout
        document = json.loads((temp_dir / "verify.json").read_text())
        assert document["all_passed"] is True
        assert {check["name"] for check in document["checks"]} >= {"half_line", "weyl_law"}

    def test_degrees_rejected(self, runner, temp_dir):
        result = invoke(runner, "kappa --k 1 --theta 90deg", temp_dir)
        assert result.exit_code == 1
        assert "radians" in result.stdout

    def test_theta_out_of_range_quotes_constraint(self, runner, temp_dir):
        result = invoke(runner, "spectrum --k 1 --theta 3.2", temp_dir)
        assert result.exit_code == 1
        assert "(k+1)π/2k" in result.stdout

    def test_missing_theta(self, runner, temp_dir):
        result = invoke(runner, "spectrum --k 1", temp_dir)
        assert result.exit_code == 1

    def test_pseudospectrum_requires_grid(self, runner, temp_dir):
        result = invoke(runner, "pseudospectrum --k 2 --theta 0.5", temp_dir)
        assert result.exit_code == 1

    def test_unknown_preset(self, runner, temp_dir):
        result = invoke(runner, "spectrum --k 1 --theta 0 --preset huge", temp_dir)
        assert result.exit_code == 1

    def test_kappa_writes_json_and_csv(self, runner, temp_dir):
        result = invoke(runner, "kappa --k 1 --theta 1.0 --preset coarse -f both", temp_dir)
        assert result.exit_code == 0, result.stdout
        document = json.loads((temp_dir / "kappa.json").read_text())
        assert len(document["rows"]) == 15
        assert document["params"] == {"k": 1, "theta": 1.0}
        assert document["discretization"]["basis_size"] == 120
        assert "compensated_slope" in document["rate_fit"]
        assert (temp_dir / "kappa.csv").exists()
        assert (temp_dir / "kappa_fit.csv").exists()

    def test_semigroup(self, runner, temp_dir):
        result = invoke(
            runner, "semigroup --k 2 --theta 0.5 --t 0.1,0.5 --preset coarse -f both", temp_dir
        )
        assert result.exit_code == 0, result.stdout
        document = json.loads((temp_dir / "semigroup.json").read_text())
        assert [report["t"] for report in document["reports"]] == [0.1, 0.5]
        assert (temp_dir / "semigroup_terms.csv").exists()

    def test_asymptotics(self, runner, temp_dir):
        result = invoke(runner, "asymptotics --k 2 --theta 0.7", temp_dir)
        assert result.exit_code == 0, result.stdout
        report = json.loads((temp_dir / "asymptotics.json").read_text())["report"]
        assert report["c_k"] > 0
        assert report["semigroup_threshold"] is None

    def test_run_file_overrides_flags(self, runner, temp_dir):
        """Values in the run file win over flags."""
        path = temp_dir / "run.yaml"
        path.write_text("command: spectrum\nk: 2\ntheta: 0.4\nbasis_size: 80\nn_max: 10\n")
        out = temp_dir / "out"
        result = invoke(runner, f"spectrum --k 1 --theta 0 -c {path}", out)
        assert result.exit_code == 0, result.stdout
        document = json.loads((out / "spectrum.json").read_text())
        assert document["params"] == {"k": 2, "theta": 0.4}
        assert len(document["rows"]) == 10

    def test_run_file_command_mismatch(self, runner, temp_dir):
        path = temp_dir / "run.yaml"
        path.write_text("command: kappa\nk: 1\ntheta: 0.5\n")
        result = invoke(runner, f"spectrum -c {path}", temp_dir)
        assert result.exit_code == 1

    def test_outputs_identical_apart_from_metadata(self, runner, temp_dir):
        """Two runs with the same inputs give the same artifacts."""
        for name in ("first", "second"):
            clear_cache()
            command_line = "spectrum --k 2 --theta 0.6 --preset coarse -f both"
            result = invoke(runner, command_line, temp_dir / name)
            assert result.exit_code == 0, result.stdout
        first, second = temp_dir / "first", temp_dir / "second"
        assert without_metadata(first / "spectrum.json") == without_metadata(
            second / "spectrum.json"
        )
        assert (first / "spectrum.csv").read_bytes() == (second / "spectrum.csv").read_bytes()

    def test_presets_drive_run_and_logging(self, runner, temp_dir, tuned_presets, monkeypatch):
        """The composed quadrature preset is passed to run and the output preset to logging."""
        calls = {}
        monkeypatch.setattr(
            cli_module,
            "setup_logging",
            lambda level, format_style: calls.update(level=level, format_style=format_style),
        )
        real_run = cli_module.run

        def capture_run(config, quadrature):
            calls["quadrature"] = quadrature
            return real_run(config, quadrature)

        monkeypatch.setattr(cli_module, "run", capture_run)
        result = invoke(runner, "asymptotics --k 2 --theta 0.7", temp_dir)
        assert result.exit_code == 0, result.stdout
        assert calls == {
            "level": "INFO",
            "format_style": "json",
            "quadrature": QuadratureConfig(rel_tol=1e-10, rule_order=21),
        }

    def test_flags_override_logging_preset(self, runner, temp_dir, tuned_presets, monkeypatch):
        calls = []
        monkeypatch.setattr(
            cli_module,
            "setup_logging",
            lambda level, format_style: calls.append((level, format_style)),
        )
        result = invoke(runner, "asymptotics --k 2 --theta 0.7 --log-level ERROR", temp_dir)
        assert result.exit_code == 0, result.stdout
        invoke(runner, "asymptotics --k 2 --theta 0.7 -v", temp_dir)
        assert calls == [("ERROR", "json"), ("DEBUG", "detailed")]
