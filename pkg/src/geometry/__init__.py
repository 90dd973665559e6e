"""
Balls, two-ball enclosing balls and the relaxed Chebyshev center QP.
"""

from src.geometry.balls import (
    Ball,
    DisjointBallsError,
    GeometryError,
    min_enclosing_two_balls,
    smaller_ball,
)
from src.geometry.rcc import (
    QPConvergenceError,
    RCCResult,
    SimplexWeights,
    project_simplex,
    rcc_dual_solve,
)

__all__ = [
    "Ball",
    "DisjointBallsError",
    "GeometryError",
    "min_enclosing_two_balls",
    "smaller_ball",
    "QPConvergenceError",
    "RCCResult",
    "SimplexWeights",
    "project_simplex",
    "rcc_dual_solve",
]
