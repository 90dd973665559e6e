"""
Limited-memory ball bookkeeping: the last m long-step balls B(x_i⁺⁺, r_i²)
and their enclosing ball together with the previous ball.
"""

from collections import deque
from typing import Deque

import numpy as np

from src.geometry.balls import Ball, smaller_ball
from src.geometry.rcc import QPConvergenceError, rcc_dual_solve
from src.utils.logger import get_logger

logger = get_logger(__name__)


class MemoryBalls:
    """Fixed-size window of long-step balls."""

    def __init__(self, size: int, qp_tol: float, qp_max_iter: int):
        if size < 1:
            raise ValueError(f"memory size must be >= 1, got {size}")
        self.size = size
        self.qp_tol = qp_tol
        self.qp_max_iter = qp_max_iter
        self.balls: Deque[Ball] = deque(maxlen=size)
        self.qp_failures = 0
        self._warned_beck = False

    def __len__(self) -> int:
        return len(self.balls)

    def push(self, center: np.ndarray, r_sq: float) -> None:
        self.balls.append(Ball(center=center, r_sq=r_sq))

    def enclose(self, previous: Ball, two_ball: Ball) -> Ball:
        """
        Smaller of the RCC ball over {previous} ∪ window and the two-ball
        enclosing ball. Ties keep the two-ball result.
        """
        balls = [previous, *self.balls]
        try:
            result = rcc_dual_solve(
                [b.center for b in balls],
                [b.r_sq for b in balls],
                tol=self.qp_tol,
                max_iter=self.qp_max_iter,
            )
        except QPConvergenceError as e:
            # any simplex point still gives an enclosing ball
            self.qp_failures += 1
            logger.debug(f"RCC QP stopped early: {e}")
            result = e.result

        if not result.beck_exact and not self._warned_beck:
            self._warned_beck = True
            logger.warning(
                f"Limited memory uses {len(balls)} balls in dimension {previous.dim}; "
                f"RCC equivalence needs fewer balls than dimensions"
            )

        rcc_ball = result.ball
        if not np.isfinite(rcc_ball.r_sq) or rcc_ball.r_sq <= 0:
            return two_ball
        return smaller_ball(two_ball, rcc_ball)
