"""
Runtime settings: protocol defaults from Config/bench_defaults.yaml with
environment overrides loaded through python-dotenv.
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

from src.utils.logger import get_logger

load_dotenv()

logger = get_logger(__name__)

DEFAULTS_PATH = Path("Config/bench_defaults.yaml")


class SolverDefaults(BaseModel):
    eta: float = Field(0.5, gt=0, lt=1)
    gamma: float = Field(0.9, gt=0, lt=1)
    tol: float = Field(1e-8, ge=0)
    max_iter: int = Field(100_000, ge=1)
    criterion: str = "relgap"
    rootfinder: str = "ssn"
    root_tol: float = Field(1e-10, gt=0)
    root_max_iter: int = Field(100, ge=1)
    step_cap_factor: float = Field(1e6, ge=1)


class QPDefaults(BaseModel):
    tol: float = Field(1e-12, gt=0)
    max_iter: int = Field(100_000, ge=1)


class ReferenceDefaults(BaseModel):
    max_iter: int = Field(100_000, ge=1)
    gradmap_floor: float = Field(1e-13, gt=0)


class ExperimentDefaults(BaseModel):
    problem: str = "ls"
    alpha: float = Field(1e-8, gt=0)
    mu_scales: List[float] = Field(default_factory=lambda: [1e-3, 1e-4, 1e-5])
    solvers: List[str] = Field(default_factory=lambda: ["geopg-b", "apg-b"])
    max_workers: int = Field(1, ge=1)
    output_dir: str = "results"


class Settings(BaseModel):
    """Process-wide configuration."""
    solver: SolverDefaults = Field(default_factory=SolverDefaults)
    qp: QPDefaults = Field(default_factory=QPDefaults)
    reference: ReferenceDefaults = Field(default_factory=ReferenceDefaults)
    experiment: ExperimentDefaults = Field(default_factory=ExperimentDefaults)
    log_level: Optional[str] = None


def _read_defaults(path: Path) -> Dict[str, Any]:
    if not path.exists():
        logger.debug(f"No defaults file at {path}, using built-in defaults")
        return {}
    try:
        with open(path, "r") as f:
            return yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        logger.error(f"Failed to read defaults from {path}: {e}. Using built-in defaults.")
        return {}


def load_settings(path: Optional[Path] = None) -> Settings:
    """Build settings from the YAML defaults file and GEOPG_* env vars."""
    path = Path(path or os.getenv("GEOPG_DEFAULTS_PATH", DEFAULTS_PATH))
    raw = _read_defaults(path)

    experiment = raw.setdefault("experiment", {})
    if os.getenv("GEOPG_MAX_WORKERS"):
        experiment["max_workers"] = int(os.environ["GEOPG_MAX_WORKERS"])
    if os.getenv("GEOPG_OUTPUT_DIR"):
        experiment["output_dir"] = os.environ["GEOPG_OUTPUT_DIR"]
    raw["log_level"] = os.getenv("GEOPG_LOG_LEVEL") or raw.get("log_level")

    return Settings.model_validate(raw)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get the process-wide settings instance."""
    return load_settings()
