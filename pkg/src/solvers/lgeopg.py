"""
Limited-memory GeoPG: the enclosing ball also accounts for the last m
long-step balls through the relaxed Chebyshev center of their intersection.
"""

from typing import Optional

import numpy as np

from src.problems.base import CompositeProblem
from src.schemas.common import SolverVariant
from src.schemas.solver import SolverConfig
from src.solvers.base import SolverResult, TraceCallback
from src.solvers.geopg import run_geometric
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _limited_memory(config: SolverConfig, variant: SolverVariant) -> SolverConfig:
    if config.memory == 0:
        logger.info(f"{variant.value} with memory 0 runs plain GeoPG")
    return config if config.variant == variant else config.model_copy(update={"variant": variant})


def lgeopg_run(
    problem: CompositeProblem,
    config: SolverConfig,
    x0: Optional[np.ndarray] = None,
    callback: Optional[TraceCallback] = None,
) -> SolverResult:
    """L-GeoPG with fixed step t ≤ 1/β and memory config.memory."""
    return run_geometric(problem, _limited_memory(config, SolverVariant.LGEOPG), x0, callback)


def lgeopg_b_run(
    problem: CompositeProblem,
    config: SolverConfig,
    x0: Optional[np.ndarray] = None,
    callback: Optional[TraceCallback] = None,
) -> SolverResult:
    """L-GeoPG with the backtracking step schedule."""
    return run_geometric(problem, _limited_memory(config, SolverVariant.LGEOPG_B), x0, callback)
