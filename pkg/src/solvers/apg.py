"""
Accelerated proximal gradient baselines with backtracking.

APG-B uses the strongly convex momentum recursion

    θ²_{k+1} = (1 − θ_{k+1})θ_k² + q_k θ_{k+1},   q_k = αt_k,   θ₀ = √(αt₀)
    y_{k+1}  = x_{k+1} + θ_k(1 − θ_k)/(θ_k² + θ_{k+1}) · (x_{k+1} − x_k)

FISTA-B is the same scheme with q_k = 0 and θ₀ = 1.
"""

import math
from typing import Optional

import numpy as np

from src.linalg.design import EvalCounters
from src.problems.base import CompositeProblem, prox_grad_step
from src.schemas.common import SolverVariant
from src.schemas.solver import SolverConfig
from src.solvers.base import (
    RunStatus,
    SolverError,
    SolverResult,
    TraceCallback,
    TraceRecorder,
    backtrack,
    grow_step,
    initial_step,
    resolve_alpha,
    should_stop,
    start_point,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


def next_theta(theta: float, q: float) -> float:
    """Positive root of θ'² + (θ² − q)θ' − θ² = 0."""
    b = theta * theta - q
    return 0.5 * (-b + math.sqrt(b * b + 4.0 * theta * theta))


def run_accelerated(
    problem: CompositeProblem,
    config: SolverConfig,
    x0: Optional[np.ndarray] = None,
    callback: Optional[TraceCallback] = None,
) -> SolverResult:
    """
    Run APG-B or FISTA-B.

    Iteration 0 reports F(x0); iteration k reports F(x_k) and ‖G_t(x_k)‖∞
    from one extra prox-gradient step at x_k.

    Raises:
        SolverError: not an accelerated variant, or step size collapse
    """
    variant = config.variant
    if variant not in (SolverVariant.APG_B, SolverVariant.FISTA_B):
        raise SolverError(f"{variant.value} is not an accelerated variant")
    strongly_convex = variant == SolverVariant.APG_B

    counters = EvalCounters()
    recorder = TraceRecorder(config, counters, callback)
    alpha = resolve_alpha(problem, config)
    x = start_point(problem, x0)
    t = initial_step(problem, config)
    t_cap = config.step_cap_factor * t

    logger.info(f"Starting {variant.value} on {problem.name}: t0={t:.3e}, alpha={alpha:.3e}")

    it, t, shrunk = backtrack(problem, x, t, config.eta, counters)
    value = problem.objective(x, counters)
    recorder.emit(0, value, it.gmap_inf, t)

    theta = min(math.sqrt(alpha * t), 1.0) if strongly_convex else 1.0
    y = x
    first = True
    status = RunStatus.MAX_ITER
    iteration = 0

    for iteration in range(1, config.max_iter + 1):
        if first:
            # the initial backtracking already evaluated y = x0
            first = False
        else:
            if not shrunk:
                t = grow_step(t, config, t_cap)
            it, t, shrunk = backtrack(problem, y, t, config.eta, counters)

        x_next = it.x_plus
        q = min(alpha * t, 1.0) if strongly_convex else 0.0
        theta_next = next_theta(theta, q)
        momentum = theta * (1.0 - theta) / (theta * theta + theta_next)
        y = x_next + momentum * (x_next - x)
        x, theta = x_next, theta_next

        value = problem.objective(x, counters)
        check = prox_grad_step(problem, x, t, counters)
        record = recorder.emit(iteration, value, check.gmap_inf, t)
        if should_stop(config, record):
            status = RunStatus.CONVERGED
            break

    logger.info(
        f"Finished {variant.value}: status={status.value}, iterations={iteration}, "
        f"F={value:.12e}, counters={counters.as_dict()}"
    )
    return SolverResult(
        variant=variant,
        x=x,
        F=value,
        status=status,
        iterations=iteration,
        counters=counters,
        trace=recorder.records,
        t_final=t,
    )


def apg_b_run(problem, config, x0=None, callback=None) -> SolverResult:
    """Strongly convex APG with backtracking."""
    if config.variant != SolverVariant.APG_B:
        config = config.model_copy(update={"variant": SolverVariant.APG_B})
    return run_accelerated(problem, config, x0, callback)


def fista_b_run(problem, config, x0=None, callback=None) -> SolverResult:
    """FISTA with backtracking (no strong-convexity momentum)."""
    if config.variant != SolverVariant.FISTA_B:
        config = config.model_copy(update={"variant": SolverVariant.FISTA_B})
    return run_accelerated(problem, config, x0, callback)
