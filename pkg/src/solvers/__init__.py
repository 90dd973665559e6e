"""
GeoPG family, accelerated baselines and the solver registry.
"""

from typing import Callable, Dict, Optional

import numpy as np

from src.problems.base import CompositeProblem
from src.schemas.common import SolverVariant
from src.schemas.solver import SolverConfig
from src.solvers.apg import apg_b_run, fista_b_run, run_accelerated
from src.solvers.base import (
    RunStatus,
    SolverError,
    SolverResult,
    TraceCallback,
    TraceRecord,
    relative_gap,
)
from src.solvers.geopg import geopg_b_run, geopg_run, run_geometric
from src.solvers.lgeopg import lgeopg_b_run, lgeopg_run

SOLVERS: Dict[SolverVariant, Callable[..., SolverResult]] = {
    SolverVariant.GEOPG: geopg_run,
    SolverVariant.GEOPG_B: geopg_b_run,
    SolverVariant.LGEOPG: lgeopg_run,
    SolverVariant.LGEOPG_B: lgeopg_b_run,
    SolverVariant.APG_B: apg_b_run,
    SolverVariant.FISTA_B: fista_b_run,
}


def run_solver(
    problem: CompositeProblem,
    config: SolverConfig,
    x0: Optional[np.ndarray] = None,
    callback: Optional[TraceCallback] = None,
) -> SolverResult:
    """Dispatch on config.variant."""
    return SOLVERS[config.variant](problem, config, x0, callback)


__all__ = [
    "SOLVERS",
    "run_solver",
    "RunStatus",
    "SolverError",
    "SolverResult",
    "TraceCallback",
    "TraceRecord",
    "relative_gap",
    "apg_b_run",
    "fista_b_run",
    "geopg_b_run",
    "geopg_run",
    "lgeopg_b_run",
    "lgeopg_run",
    "run_accelerated",
    "run_geometric",
]
