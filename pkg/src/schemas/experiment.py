"""
Benchmark experiment description.
"""

from typing import Any, Dict, List, Optional, Tuple

from pydantic import Field, field_validator, model_validator

from src.schemas.common import (
    BaseSchema,
    ProblemKind,
    RootFinderName,
    SolverVariant,
    TerminationCriterion,
)


class ExperimentSpec(BaseSchema):
    problem: ProblemKind = ProblemKind.LS
    data_path: Optional[str] = Field(None, description="LIBSVM file")
    synthetic: Optional[Tuple[int, int, int]] = Field(None, description="(p, n, seed) for a generated dataset")
    alpha: float = Field(1e-8, gt=0)
    mu: Optional[List[float]] = Field(None, description="Absolute μ values; take precedence over mu_scales")
    mu_scales: List[float] = Field(default_factory=lambda: [1e-3, 1e-4, 1e-5])
    solvers: List[SolverVariant] = Field(default_factory=lambda: [SolverVariant.GEOPG_B, SolverVariant.APG_B], min_length=1)
    memory: List[int] = Field(default_factory=lambda: [5], min_length=1)
    solver_overrides: Dict[SolverVariant, Dict[str, Any]] = Field(default_factory=dict)

    termination: Optional[TerminationCriterion] = None
    tol: Optional[float] = Field(None, ge=0)
    max_iter: Optional[int] = Field(None, ge=0)
    rootfinder: Optional[RootFinderName] = None
    t0: Optional[float] = Field(None, gt=0)
    eta: Optional[float] = Field(None, gt=0, lt=1)
    gamma: Optional[float] = Field(None, gt=0, lt=1)

    output_dir: str = "results"
    max_workers: int = Field(1, ge=1)
    reference_max_iter: Optional[int] = Field(None, ge=1)
    reference_floor: Optional[float] = Field(None, gt=0)
    report_format: str = Field("markdown", pattern="^(markdown|text)$")

    @field_validator("mu")
    @classmethod
    def check_mu(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is not None and (not v or any(m < 0 for m in v)):
            raise ValueError("mu must be a nonempty list of non-negative values")
        return v

    @field_validator("memory")
    @classmethod
    def check_memory(cls, v: List[int]) -> List[int]:
        if any(m < 0 for m in v):
            raise ValueError("memory sizes must be non-negative")
        return v

    @field_validator("synthetic")
    @classmethod
    def check_synthetic(cls, v: Optional[Tuple[int, int, int]]) -> Optional[Tuple[int, int, int]]:
        if v is not None and (v[0] < 1 or v[1] < 1):
            raise ValueError(f"synthetic sizes must be >= 1, got p={v[0]}, n={v[1]}")
        return v

    @model_validator(mode="after")
    def check_sources(self) -> "ExperimentSpec":
        if (self.data_path is None) == (self.synthetic is None):
            raise ValueError("exactly one of data_path or synthetic must be given")
        if self.mu is None and not self.mu_scales:
            raise ValueError("either mu or mu_scales must be given")
        return self
