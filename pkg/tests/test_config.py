"""
Tests for settings loading and the run/experiment schemas.
"""

import pytest
from pydantic import ValidationError

from src.config import Settings, load_settings
from src.schemas.common import RootFinderName, SolverVariant, TerminationCriterion
from src.schemas.experiment import ExperimentSpec
from src.schemas.solver import SolverConfig


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("GEOPG_MAX_WORKERS", "GEOPG_OUTPUT_DIR", "GEOPG_LOG_LEVEL", "GEOPG_DEFAULTS_PATH"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


class TestLoadSettings:
    """Test YAML defaults and environment overrides."""

    def test_missing_file_uses_builtin_defaults(self, clean_env, tmp_path):
        """An absent YAML file leaves the built-in defaults."""
        settings = load_settings(tmp_path / "absent.yaml")
        assert settings.solver.eta == 0.5
        assert settings.solver.gamma == 0.9
        assert settings.solver.tol == 1e-8
        assert settings.experiment.mu_scales == [1e-3, 1e-4, 1e-5]

    def test_yaml_values_are_read(self, clean_env, tmp_path):
        """Values in the YAML file override the defaults."""
        path = tmp_path / "defaults.yaml"
        path.write_text("solver:\n  eta: 0.25\n  rootfinder: brent\nqp:\n  tol: 1.0e-10\n")

        settings = load_settings(path)
        assert settings.solver.eta == 0.25
        assert settings.solver.rootfinder == "brent"
        assert settings.qp.tol == 1e-10
        assert settings.solver.gamma == 0.9

    def test_env_overrides(self, clean_env, tmp_path):
        """GEOPG_* environment variables win over YAML."""
        clean_env.setenv("GEOPG_MAX_WORKERS", "4")
        clean_env.setenv("GEOPG_OUTPUT_DIR", str(tmp_path / "out"))
        clean_env.setenv("GEOPG_LOG_LEVEL", "DEBUG")

        settings = load_settings(tmp_path / "absent.yaml")
        assert settings.experiment.max_workers == 4
        assert settings.experiment.output_dir == str(tmp_path / "out")
        assert settings.log_level == "DEBUG"

    def test_invalid_yaml_falls_back(self, clean_env, tmp_path):
        """Unparseable YAML is logged and ignored."""
        path = tmp_path / "broken.yaml"
        path.write_text("solver: [unclosed\n")
        assert load_settings(path).solver.eta == 0.5

    def test_out_of_range_value_rejected(self, clean_env, tmp_path):
        """Out-of-range values fail validation."""
        path = tmp_path / "bad.yaml"
        path.write_text("solver:\n  eta: 1.5\n")
        with pytest.raises(ValidationError):
            load_settings(path)


class TestSolverConfig:
    """Test SolverConfig validation."""

    def test_relgap_requires_f_star(self):
        """relgap termination needs a reference value."""
        with pytest.raises(ValidationError, match="f_star"):
            SolverConfig(variant=SolverVariant.GEOPG_B)

    def test_gradmap_needs_no_f_star(self):
        """gradmap termination works without F*."""
        config = SolverConfig(variant="apg-b", termination="gradmap")
        assert config.variant == SolverVariant.APG_B
        assert config.termination == TerminationCriterion.GRADMAP

    def test_rejects_unknown_fields(self):
        """Unknown keys are refused."""
        with pytest.raises(ValidationError):
            SolverConfig(variant="geopg", termination="gradmap", stepsize=1.0)

    def test_from_settings_applies_overrides(self):
        """Settings supply defaults and keyword overrides win."""
        settings = Settings()
        config = SolverConfig.from_settings(
            SolverVariant.LGEOPG_B, settings, memory=3, f_star=1.0, eta=None, rootfinder="brent"
        )
        assert config.memory == 3
        assert config.eta == settings.solver.eta
        assert config.rootfinder == RootFinderName.BRENT
        assert config.qp_tol == settings.qp.tol


class TestExperimentSpec:
    """Test ExperimentSpec validation."""

    def test_exactly_one_data_source(self):
        """A dataset path and a synthetic triple are mutually exclusive."""
        with pytest.raises(ValidationError, match="exactly one"):
            ExperimentSpec()
        with pytest.raises(ValidationError, match="exactly one"):
            ExperimentSpec(data_path="a.svm", synthetic=(10, 5, 1))

    def test_negative_mu_rejected(self):
        """μ values must be non-negative."""
        with pytest.raises(ValidationError):
            ExperimentSpec(synthetic=(10, 5, 1), mu=[1e-3, -1.0])

    def test_defaults(self):
        """An experiment spec fills in the benchmark defaults."""
        spec = ExperimentSpec(synthetic=(10, 5, 1))
        assert spec.solvers == [SolverVariant.GEOPG_B, SolverVariant.APG_B]
        assert spec.memory == [5]
        assert spec.report_format == "markdown"

    def test_bad_report_format(self):
        """Only markdown and text reports exist."""
        with pytest.raises(ValidationError):
            ExperimentSpec(synthetic=(10, 5, 1), report_format="html")
