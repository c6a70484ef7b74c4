"""
Tests for Hydra presets, YAML run files and the validated RunConfig
"""

import math
from pathlib import Path

import pytest
from omegaconf import OmegaConf
from pydantic import ValidationError as PydanticValidationError

from spectral_instability.configs import (
    PRESETS,
    DiscretizationPreset,
    QuadraturePreset,
    compose_config,
    load_config_file,
)
from spectral_instability.core import Command, OutputFormat, RunConfig
from spectral_instability.spectral import DiscretizationConfig
from spectral_instability.specfun import QuadratureConfig
from spectral_instability.utils.exceptions import ConfigurationError


@pytest.mark.unit
class TestPresets:
    """Test the structured presets and Hydra composition."""

    def test_default_composition(self):
        config = compose_config()
        assert config.discretization.basis_size == 200
        assert config.discretization.n_max == 20
        assert config.discretization.scale is None
        assert config.output.format == "json"

    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_named_presets(self, name):
        config = compose_config([f"discretization={name}"])
        preset = OmegaConf.to_object(config.discretization)
        assert preset == PRESETS[name]
        assert 4 * preset.n_max <= preset.basis_size

    def test_field_override(self):
        config = compose_config(["discretization=coarse", "discretization.n_max=10"])
        assert config.discretization.basis_size == 120
        assert config.discretization.n_max == 10

    def test_unknown_preset(self):
        with pytest.raises(ConfigurationError):
            compose_config(["discretization=enormous"])

    def test_to_config(self):
        assert DiscretizationPreset(160, 12, 0.5).to_config() == DiscretizationConfig(160, 12, 0.5)
        assert QuadraturePreset().to_config() == QuadratureConfig()


@pytest.mark.unit
class TestRunFile:
    """Test load_config_file."""

    def test_values_set_in_file(self, temp_dir):
        path = temp_dir / "run.yaml"
        path.write_text("command: semigroup\nk: 2\ntheta: 0.7\nt: [0.1, 0.5]\n")
        assert load_config_file(path) == {
            "command": "semigroup",
            "k": 2,
            "theta": 0.7,
            "t": [0.1, 0.5],
        }

    def test_unknown_key(self, temp_dir):
        path = temp_dir / "run.yaml"
        path.write_text("k: 1\ntemperature: 0.8\n")
        with pytest.raises(ConfigurationError):
            load_config_file(path)

    def test_wrong_type(self, temp_dir):
        path = temp_dir / "run.yaml"
        path.write_text("k: one\n")
        with pytest.raises(ConfigurationError):
            load_config_file(path)

    def test_missing_file(self, temp_dir):
        with pytest.raises(ConfigurationError):
            load_config_file(temp_dir / "absent.yaml")

    def test_shipped_examples_parse(self):
        """Every YAML file under configs/ is a valid run file."""
        root = Path(__file__).resolve().parents[2] / "configs"
        paths = sorted(root.glob("*.yaml"))
        assert paths
        for path in paths:
            assert load_config_file(path)["command"] in {command.value for command in Command}


@pytest.mark.unit
class TestRunConfig:
    """Test RunConfig validation."""

    def test_defaults(self):
        config = RunConfig(command=Command.SPECTRUM, k=1, theta=0.5)
        assert config.format is OutputFormat.JSON
        assert config.discretization() == DiscretizationConfig()
        assert config.oscillator_params().theta == 0.5
        assert config.grid_spec() is None

    def test_theta_message_quotes_constraint(self):
        """Out-of-range angles name the admissible range and the unit."""
        with pytest.raises(PydanticValidationError) as exc_info:
            RunConfig(command=Command.KAPPA, k=1, theta=math.pi)
        message = str(exc_info.value)
        assert "|θ| < (k+1)π/2k" in message
        assert "radians" in message

    def test_quarter_rule(self):
        with pytest.raises(PydanticValidationError):
            RunConfig(command=Command.SPECTRUM, k=1, theta=0.0, basis_size=100, n_max=30)

    def test_pseudospectrum_requires_grid(self):
        with pytest.raises(PydanticValidationError):
            RunConfig(command=Command.PSEUDOSPECTRUM, k=1, theta=0.5)

    def test_pseudospectrum_bad_grid(self):
        with pytest.raises(ConfigurationError):
            RunConfig(command=Command.PSEUDOSPECTRUM, k=1, theta=0.5, grid="0,1,0,1")

    def test_semigroup_times(self):
        config = RunConfig(command=Command.SEMIGROUP, k=2, theta=0.5, t_values=[0.1, 1.0])
        assert config.t_values == [0.1, 1.0]
        with pytest.raises(PydanticValidationError):
            RunConfig(command=Command.SEMIGROUP, k=2, theta=0.5)
        with pytest.raises(PydanticValidationError):
            RunConfig(command=Command.SEMIGROUP, k=2, theta=0.5, t_values=[0.5, -1.0])

    def test_frozen(self):
        config = RunConfig(command=Command.SPECTRUM, k=1, theta=0.5)
        with pytest.raises(PydanticValidationError):
            config.k = 2
