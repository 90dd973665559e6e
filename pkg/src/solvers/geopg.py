"""
Geometric proximal gradient method.

Each iteration picks x_k on Line(x⁺_{k−1}, c_{k−1}) by root finding, then
encloses the intersection of

    B(x_k⁺⁺, ‖G_t(x_k)‖²(1 − αt)/α²)
    B(c_{k−1}, R²_{k−1} − 2(F(x⁺_{k−1}) − F(x_k⁺))/α)

in the ball B(c_k, R_k²), which always contains the minimizer. The same loop
runs the backtracking schedule (t/γ growth, ηt shrink re-running the root
finder) and, with a memory window, the limited-memory variants.
"""

from typing import Optional

import numpy as np

from src.geometry.balls import Ball, DisjointBallsError, min_enclosing_two_balls
from src.linalg.design import EvalCounters
from src.problems.base import (
    CompositeProblem,
    prox_grad_step,
    sufficient_decrease_holds,
)
from src.rootfind.finders import get_root_finder
from src.rootfind.query import LineQuery
from src.schemas.common import SolverVariant
from src.schemas.solver import SolverConfig
from src.solvers.base import (
    MIN_STEP,
    RunStatus,
    SolverError,
    SolverResult,
    TraceCallback,
    TraceRecorder,
    backtrack,
    grow_step,
    initial_step,
    long_step,
    long_step_radius_sq,
    resolve_alpha,
    should_stop,
    start_point,
)
from src.solvers.memory import MemoryBalls
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Radii within this many ulps of (|F(x⁺_{k-1})| + |F(x⁺_k)|)/α are rounding noise
RADIUS_ROUNDING_FACTOR = 256.0


def radius_noise_floor(previous_value: float, next_value: float, alpha: float) -> float:
    """Smallest R² the tightening R² − 2(F(x⁺_{k-1}) − F(x⁺_k))/α resolves."""
    eps = np.finfo(float).eps
    return RADIUS_ROUNDING_FACTOR * eps * (abs(previous_value) + abs(next_value)) / alpha


def run_geometric(
    problem: CompositeProblem,
    config: SolverConfig,
    x0: Optional[np.ndarray] = None,
    callback: Optional[TraceCallback] = None,
) -> SolverResult:
    """
    Run GeoPG, GeoPG-B, L-GeoPG or L-GeoPG-B as selected by config.variant.

    Args:
        problem: Composite objective
        config: Run parameters; memory = 0 disables the RCC step
        x0: Starting point (zeros by default)
        callback: Receives each TraceRecord as it is produced

    Returns:
        SolverResult with x = x_k⁺ of the last iteration

    Raises:
        SolverError: invalid step size
        NonFiniteValueError: non-finite objective or gradient
        RootFindingError: line-search budget exhausted
    """
    variant = config.variant
    if not variant.is_geometric:
        raise SolverError(f"{variant.value} is not a geometric variant")

    counters = EvalCounters()
    recorder = TraceRecorder(config, counters, callback)
    alpha = resolve_alpha(problem, config)
    x0 = start_point(problem, x0)
    t = initial_step(problem, config)
    t_cap = config.step_cap_factor * t
    find_xk = get_root_finder(config.rootfinder.value)

    memory = None
    if variant.limited_memory and config.memory > 0:
        memory = MemoryBalls(config.memory, config.qp_tol, config.qp_max_iter)

    logger.info(
        f"Starting {variant.value} on {problem.name}: t0={t:.3e}, alpha={alpha:.3e}, "
        f"memory={config.memory if memory else 0}, rootfinder={config.rootfinder.value}"
    )

    if variant.backtracking:
        it, t, shrunk = backtrack(problem, x0, t, config.eta, counters)
    else:
        it, shrunk = prox_grad_step(problem, x0, t, counters), False

    center = long_step(it, alpha)
    r_sq = long_step_radius_sq(it, alpha)
    if memory is not None and r_sq > 0:
        memory.push(center, r_sq)

    x_plus = it.x_plus
    value = problem.objective(x_plus, counters)
    anchor = prox_grad_step(problem, x_plus, t, counters)
    recorder.emit(0, value, anchor.gmap_inf, t, r_sq, center)

    status = RunStatus.MAX_ITER
    iteration = 0
    for iteration in range(1, config.max_iter + 1):
        if variant.backtracking and not shrunk:
            t = grow_step(t, config, t_cap)
        shrunk = False

        while True:
            query = LineQuery(problem, x=x_plus, c=center, t=t, counters=counters, anchor=anchor)
            line = find_xk(query, tol=config.root_tol, max_iter=config.root_max_iter)
            it = line.iterate
            if not variant.backtracking or sufficient_decrease_holds(problem, it, counters):
                break
            t *= config.eta
            shrunk = True
            logger.debug(f"iter {iteration}: backtracking to t={t:.3e}")
            if t < MIN_STEP:
                raise SolverError("backtracking drove the step size to zero")

        next_value = problem.objective(it.x_plus, counters)
        x_a = long_step(it, alpha)
        r_a_sq = long_step_radius_sq(it, alpha)
        r_b_sq = r_sq - 2.0 * (value - next_value) / alpha
        noise_sq = radius_noise_floor(value, next_value, alpha)

        x_plus, value = it.x_plus, next_value
        anchor = prox_grad_step(problem, x_plus, t, counters)

        floor = False
        if r_a_sq <= 0:
            # x_k⁺⁺ is the minimizer
            center, r_sq = x_a, 0.0
        elif r_b_sq <= noise_sq:
            floor = True
        else:
            previous = Ball(center=center, r_sq=r_b_sq)
            try:
                ball = min_enclosing_two_balls(Ball(center=x_a, r_sq=r_a_sq), previous)
            except DisjointBallsError as e:
                logger.debug(f"iter {iteration}: {e}")
                floor = True
            else:
                if memory is not None:
                    memory.push(x_a, r_a_sq)
                    ball = memory.enclose(previous, ball)
                if ball.r_sq <= noise_sq:
                    floor = True
                else:
                    center, r_sq = ball.center, ball.r_sq

        if floor:
            recorder.emit(iteration, value, anchor.gmap_inf, t)
            status = RunStatus.CONVERGED_GEOMETRIC_FLOOR
            logger.info(f"{variant.value}: geometric floor reached at iteration {iteration}")
            break

        record = recorder.emit(iteration, value, anchor.gmap_inf, t, r_sq, center)
        logger.debug(
            f"iter {iteration}: F={value:.12e}, R^2={r_sq:.3e}, t={t:.3e}, "
            f"line={line.case.value}/{line.iterations}"
        )
        if should_stop(config, record):
            status = RunStatus.CONVERGED
            break

    logger.info(
        f"Finished {variant.value}: status={status.value}, iterations={iteration}, "
        f"F={value:.12e}, counters={counters.as_dict()}"
    )
    return SolverResult(
        variant=variant,
        x=x_plus,
        F=value,
        status=status,
        iterations=iteration,
        counters=counters,
        trace=recorder.records,
        t_final=t,
        Rk_sq=r_sq,
        center=center,
    )


def _with_variant(config: SolverConfig, variant: SolverVariant) -> SolverConfig:
    return config if config.variant == variant else config.model_copy(update={"variant": variant})


def geopg_run(problem, config, x0=None, callback=None) -> SolverResult:
    """GeoPG with fixed step t ≤ 1/β."""
    return run_geometric(problem, _with_variant(config, SolverVariant.GEOPG), x0, callback)


def geopg_b_run(problem, config, x0=None, callback=None) -> SolverResult:
    """GeoPG with the backtracking step schedule (β need not be known)."""
    return run_geometric(problem, _with_variant(config, SolverVariant.GEOPG_B), x0, callback)
