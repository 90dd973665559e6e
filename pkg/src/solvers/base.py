"""
Shared solver bookkeeping: statuses, trace records, results, step-size
initialization, backtracking and termination tests.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np

from src.linalg.design import EvalCounters
from src.problems.base import (
    CompositeProblem,
    Iterate,
    prox_grad_step,
    sufficient_decrease_holds,
)
from src.schemas.common import SolverVariant, TerminationCriterion
from src.schemas.solver import SolverConfig
from src.utils.logger import get_logger

logger = get_logger(__name__)

STEP_TOLERANCE = 1e-12
MIN_STEP = 1e-300


class SolverError(RuntimeError):
    """Invalid step size or run-time misuse of a solver."""


class RunStatus(Enum):
    CONVERGED = "converged"
    CONVERGED_GEOMETRIC_FLOOR = "converged-geometric-floor"
    MAX_ITER = "max-iter"


@dataclass
class TraceRecord:
    """Telemetry of one iteration, measured at x_k⁺.

    rel_gap is None without a reference value; t_k and Rk_sq are None where
    they do not apply (Rk_sq for accelerated baselines and floor exits).
    """
    iter: int
    time_s: float
    F: float
    rel_gap: Optional[float]
    gmap_inf: float
    t_k: Optional[float]
    Rk_sq: Optional[float]
    counters: EvalCounters
    center: Optional[np.ndarray] = field(default=None, compare=False, repr=False)


TraceCallback = Callable[[TraceRecord], None]


@dataclass
class SolverResult:
    variant: SolverVariant
    x: np.ndarray
    F: float
    status: RunStatus
    iterations: int
    counters: EvalCounters
    trace: List[TraceRecord] = field(default_factory=list)
    t_final: Optional[float] = None
    Rk_sq: Optional[float] = None
    center: Optional[np.ndarray] = None

    @property
    def converged(self) -> bool:
        return self.status != RunStatus.MAX_ITER

    @property
    def elapsed(self) -> float:
        return self.trace[-1].time_s if self.trace else 0.0

    def get_summary(self) -> dict:
        return {
            "variant": self.variant.value,
            "status": self.status.value,
            "iterations": self.iterations,
            "F": self.F,
            "time_s": self.elapsed,
            **self.counters.as_dict(),
        }


def relative_gap(value: float, f_star: Optional[float]) -> Optional[float]:
    """(F − F*)/|F*| clipped at 0; the absolute gap when F* = 0."""
    if f_star is None:
        return None
    gap = value - f_star
    if f_star != 0:
        gap /= abs(f_star)
    return max(gap, 0.0)


class TraceRecorder:
    """Collects TraceRecords for one run and forwards them to a callback."""

    def __init__(
        self,
        config: SolverConfig,
        counters: EvalCounters,
        callback: Optional[TraceCallback] = None,
    ):
        self.config = config
        self.counters = counters
        self.callback = callback
        self.records: List[TraceRecord] = []
        self._start = time.perf_counter()

    def emit(
        self,
        iteration: int,
        value: float,
        gmap_inf: float,
        t: Optional[float],
        r_sq: Optional[float] = None,
        center: Optional[np.ndarray] = None,
    ) -> TraceRecord:
        record = TraceRecord(
            iter=iteration,
            time_s=time.perf_counter() - self._start,
            F=float(value),
            rel_gap=relative_gap(value, self.config.f_star),
            gmap_inf=float(gmap_inf),
            t_k=None if t is None else float(t),
            Rk_sq=None if r_sq is None else float(r_sq),
            counters=self.counters.snapshot(),
            center=None if center is None or not self.config.keep_centers else np.array(center, copy=True),
        )
        self.records.append(record)
        if self.callback:
            self.callback(record)
        return record


def should_stop(config: SolverConfig, record: TraceRecord) -> bool:
    """Termination test on a freshly emitted record."""
    if config.termination == TerminationCriterion.GRADMAP:
        return record.gmap_inf <= config.tol
    return record.rel_gap is not None and record.rel_gap <= config.tol


def resolve_alpha(problem: CompositeProblem, config: SolverConfig) -> float:
    return config.alpha if config.alpha is not None else problem.alpha


def initial_step(problem: CompositeProblem, config: SolverConfig) -> float:
    """
    Starting step size.

    Backtracking variants start from t0, or 1/β, or 1. Fixed-step variants
    need β and reject t0 > 1/β.

    Raises:
        SolverError: fixed step without β or with t0 > 1/β
    """
    beta = problem.beta
    if config.variant.backtracking:
        if config.t0 is not None:
            return config.t0
        return 1.0 / beta if beta else 1.0

    if beta is None:
        raise SolverError(f"{config.variant.value} uses a fixed step and needs the smoothness constant beta")
    t = config.t0 if config.t0 is not None else 1.0 / beta
    if t > (1.0 / beta) * (1.0 + STEP_TOLERANCE):
        raise SolverError(f"step size {t:.6e} exceeds 1/beta = {1.0 / beta:.6e}")
    return t


def backtrack(
    problem: CompositeProblem,
    x: np.ndarray,
    t: float,
    eta: float,
    counters: EvalCounters,
) -> Tuple[Iterate, float, bool]:
    """Shrink t by η until the sufficient-decrease test holds at x.

    Returns:
        (iterate, accepted t, whether any shrink happened)
    """
    shrunk = False
    while True:
        it = prox_grad_step(problem, x, t, counters)
        if sufficient_decrease_holds(problem, it, counters):
            return it, t, shrunk
        t *= eta
        shrunk = True
        if t < MIN_STEP:
            raise SolverError("backtracking drove the step size to zero")


def grow_step(t: float, config: SolverConfig, cap: float) -> float:
    """t/γ, capped at step_cap_factor·t0."""
    return min(t / config.gamma, cap)


def long_step(it: Iterate, alpha: float) -> np.ndarray:
    """x⁺⁺ = x − G_t(x)/α for the configured modulus."""
    return it.x - it.gmap / alpha


def long_step_radius_sq(it: Iterate, alpha: float) -> float:
    """‖G_t(x)‖²(1 − αt)/α²."""
    return it.gmap_norm_sq * (1.0 - alpha * it.t) / (alpha * alpha)


def start_point(problem: CompositeProblem, x0: Optional[np.ndarray]) -> np.ndarray:
    """Copy of x0 as a float vector, zeros when omitted."""
    if x0 is None:
        return np.zeros(problem.dim)
    x0 = np.array(x0, dtype=float)
    if x0.shape != (problem.dim,):
        raise ValueError(f"x0 has shape {x0.shape}, expected ({problem.dim},)")
    return x0
