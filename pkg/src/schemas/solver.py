"""
Run parameters for a single solver run.
"""

from typing import Any, Optional

from pydantic import Field, model_validator

from src.schemas.common import (
    BaseSchema,
    RootFinderName,
    SolverVariant,
    TerminationCriterion,
)


class SolverConfig(BaseSchema):
    variant: SolverVariant = Field(..., description="Algorithm to run", examples=["geopg-b"])
    t0: Optional[float] = Field(None, gt=0, description="Initial step size; 1/β when omitted")
    alpha: Optional[float] = Field(None, gt=0, description="Strong-convexity modulus; the problem's α when omitted")
    eta: float = Field(0.5, gt=0, lt=1, description="Backtracking shrink factor")
    gamma: float = Field(0.9, gt=0, lt=1, description="Step growth factor t/γ after a clean iteration")
    memory: int = Field(0, ge=0, description="Number of past x⁺⁺ balls kept by the limited-memory variants")
    tol: float = Field(1e-8, ge=0)
    max_iter: int = Field(100_000, ge=0)
    termination: TerminationCriterion = TerminationCriterion.RELGAP
    f_star: Optional[float] = Field(None, description="Reference optimal value for relgap termination")
    rootfinder: RootFinderName = RootFinderName.SSN
    root_tol: float = Field(1e-10, gt=0)
    root_max_iter: int = Field(100, ge=1)
    step_cap_factor: float = Field(1e6, ge=1, description="Backtracking steps never exceed this multiple of t0")
    qp_tol: float = Field(1e-12, gt=0)
    qp_max_iter: int = Field(100_000, ge=1)
    keep_centers: bool = Field(False, description="Store c_k on every trace record")

    @model_validator(mode="after")
    def check_termination(self) -> "SolverConfig":
        if self.termination == TerminationCriterion.RELGAP and self.f_star is None:
            raise ValueError("relgap termination requires f_star")
        return self

    @classmethod
    def from_settings(cls, variant: SolverVariant, settings: Any, **overrides: Any) -> "SolverConfig":
        """Build a config from `Settings.solver`/`Settings.qp` defaults plus overrides."""
        base = {
            "variant": variant,
            "eta": settings.solver.eta,
            "gamma": settings.solver.gamma,
            "tol": settings.solver.tol,
            "max_iter": settings.solver.max_iter,
            "termination": settings.solver.criterion,
            "rootfinder": settings.solver.rootfinder,
            "root_tol": settings.solver.root_tol,
            "root_max_iter": settings.solver.root_max_iter,
            "step_cap_factor": settings.solver.step_cap_factor,
            "qp_tol": settings.qp.tol,
            "qp_max_iter": settings.qp.max_iter,
        }
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)
