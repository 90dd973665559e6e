"""
Balls and the exact minimum enclosing ball of a two-ball intersection.

The intersection of B(c_A, r_A²) and B(c_B, r_B²) is rotationally symmetric
about the line through the centers, so its minimum enclosing ball is centered
on that axis. In axial coordinates measured from c_A toward c_B, the farthest
point of the lens from an axial center lies on the rim circle or at one of the
two apexes; the squared radius is the pointwise max of three parabolas in the
axial position, minimized at a vertex or a pairwise crossing.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.utils.logger import get_logger

logger = get_logger(__name__)

DISJOINT_TOLERANCE = 1e-9
COINCIDENT_TOLERANCE = 1e-14


class GeometryError(ValueError):
    """Invalid ball configuration."""


class DisjointBallsError(GeometryError):
    """The two balls do not intersect beyond tolerance."""

    def __init__(self, distance: float, radius_sum: float):
        super().__init__(f"disjoint balls: center distance {distance:.6e} > radius sum {radius_sum:.6e}")
        self.distance = distance
        self.radius_sum = radius_sum


@dataclass(frozen=True, eq=False)
class Ball:
    """B(c, r²) = {x : ‖x − c‖² ≤ r²}. r_sq ≤ 0 encodes a collapsed ball."""
    center: np.ndarray
    r_sq: float

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        if center.ndim != 1 or not np.all(np.isfinite(center)):
            raise GeometryError("ball center must be a finite vector")
        if not np.isfinite(self.r_sq):
            raise GeometryError(f"ball radius must be finite, got {self.r_sq}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "r_sq", float(self.r_sq))

    @property
    def radius(self) -> float:
        return float(np.sqrt(max(self.r_sq, 0.0)))

    @property
    def dim(self) -> int:
        return self.center.size

    def dist_sq(self, point: np.ndarray) -> float:
        diff = np.asarray(point, dtype=float) - self.center
        return float(diff @ diff)

    def contains(self, point: np.ndarray, rel_slack: float = 0.0, abs_slack: float = 0.0) -> bool:
        return self.dist_sq(point) <= self.r_sq * (1.0 + rel_slack) + abs_slack


def _axial_radius_sq(c: float, s0: float, h_sq: float, apex_a: float, apex_b: float) -> float:
    """Squared distance from axial position c to the farthest lens point."""
    return max(h_sq + (s0 - c) ** 2, (apex_a - c) ** 2, (c - apex_b) ** 2)


def min_enclosing_two_balls(ball_a: Ball, ball_b: Ball) -> Ball:
    """
    Minimum enclosing ball of B_A ∩ B_B.

    Args:
        ball_a: First ball, r_sq > 0
        ball_b: Second ball, r_sq > 0

    Returns:
        Ball containing the intersection with the smallest radius

    Raises:
        GeometryError: non-positive or non-finite radius, mismatched dimensions
        DisjointBallsError: the intersection is empty beyond tolerance
    """
    if ball_a.dim != ball_b.dim:
        raise GeometryError(f"dimension mismatch: {ball_a.dim} vs {ball_b.dim}")
    if ball_a.r_sq <= 0 or ball_b.r_sq <= 0:
        raise GeometryError(f"radii must be positive, got {ball_a.r_sq} and {ball_b.r_sq}")

    axis = ball_b.center - ball_a.center
    d = float(np.linalg.norm(axis))
    r_a, r_b = ball_a.radius, ball_b.radius

    if d <= COINCIDENT_TOLERANCE * (1.0 + float(np.linalg.norm(ball_a.center))):
        return ball_a if ball_a.r_sq <= ball_b.r_sq else ball_b

    if d > (r_a + r_b) * (1.0 + DISJOINT_TOLERANCE):
        raise DisjointBallsError(d, r_a + r_b)

    # one ball inside the other
    if d + r_b <= r_a:
        return ball_b
    if d + r_a <= r_b:
        return ball_a

    u = axis / d
    apex_a = r_a
    apex_b = d - r_b
    # clipped for configurations that are tangent within tolerance
    s0 = min(max((d * d + ball_a.r_sq - ball_b.r_sq) / (2.0 * d), apex_b), apex_a)
    h_sq = max(ball_a.r_sq - s0 * s0, 0.0)

    candidates = (s0, 0.0, d, 0.5 * (apex_a + apex_b), apex_a, apex_b)
    position = min(candidates, key=lambda c: _axial_radius_sq(c, s0, h_sq, apex_a, apex_b))
    r_sq = _axial_radius_sq(position, s0, h_sq, apex_a, apex_b)

    if not np.isfinite(r_sq):
        raise GeometryError(f"enclosing radius is not finite for d={d:.6e}, r_a={r_a:.6e}, r_b={r_b:.6e}")

    return Ball(center=ball_a.center + position * u, r_sq=r_sq)


def smaller_ball(first: Ball, second: Optional[Ball]) -> Ball:
    """Return whichever ball has the smaller r_sq; ties keep the first."""
    if second is None or first.r_sq <= second.r_sq:
        return first
    return second
