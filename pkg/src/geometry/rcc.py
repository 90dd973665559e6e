"""
Relaxed Chebyshev center of an intersection of balls via its dual QP

    min_λ  ‖Cλ‖² − Σ λᵢ‖cᵢ‖² + Σ λᵢ rᵢ²   s.t.  λ ∈ simplex

solved by accelerated projected gradient with an exact sort-based simplex
projection. For every feasible λ the ball B(Cλ, q(λ)) contains the
intersection, so an inexact solution is still a valid enclosing ball.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from src.geometry.balls import Ball, GeometryError
from src.utils.logger import get_logger

logger = get_logger(__name__)

SIMPLEX_TOLERANCE = 1e-10
DEFAULT_QP_TOL = 1e-12
DEFAULT_QP_MAX_ITER = 100_000


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {λ ≥ 0, Σλ = 1}."""
    v = np.asarray(v, dtype=float)
    m = v.size
    if m == 0:
        raise ValueError("cannot project an empty vector onto the simplex")
    u = np.sort(v)[::-1]
    thresholds = (np.cumsum(u) - 1.0) / np.arange(1, m + 1)
    k = np.nonzero(u > thresholds)[0][-1]
    return np.maximum(v - thresholds[k], 0.0)


@dataclass(frozen=True, eq=False)
class SimplexWeights:
    """λ with λᵢ ≥ 0 and Σλᵢ = 1."""
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("simplex weights must be a nonempty vector")
        if np.any(w < 0) or abs(float(w.sum()) - 1.0) > SIMPLEX_TOLERANCE:
            raise ValueError(f"weights are not on the simplex (sum={w.sum():.12g}, min={w.min():.3g})")
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return self.weights.size


@dataclass(frozen=True, eq=False)
class RCCResult:
    weights: SimplexWeights
    ball: Ball
    iterations: int
    beck_exact: bool


class QPConvergenceError(RuntimeError):
    """Simplex QP budget exhausted; `result` still holds a valid ball."""

    def __init__(self, iterations: int, residual: float, result: RCCResult):
        super().__init__(f"simplex QP did not converge in {iterations} iterations (residual {residual:.3e})")
        self.residual = residual
        self.result = result


def _dual_objective(gram: np.ndarray, linear: np.ndarray, lam: np.ndarray) -> float:
    return float(lam @ gram @ lam + linear @ lam)


def _make_result(shifted, offset, gram, linear, lam, iterations, beck_exact) -> RCCResult:
    weights = SimplexWeights(lam)
    center = offset + shifted.T @ lam
    ball = Ball(center=center, r_sq=_dual_objective(gram, linear, lam))
    return RCCResult(weights=weights, ball=ball, iterations=iterations, beck_exact=beck_exact)


def rcc_dual_solve(
    centers: Sequence[np.ndarray],
    radii_sq: Sequence[float],
    tol: float = DEFAULT_QP_TOL,
    max_iter: int = DEFAULT_QP_MAX_ITER,
) -> RCCResult:
    """
    Solve the simplex-constrained dual of the relaxed Chebyshev center problem.

    Args:
        centers: m ball centers of equal dimension n
        radii_sq: m squared radii
        tol: Stop when the projected-gradient norm falls below tol·(1 + scale)
        max_iter: Iteration budget

    Returns:
        RCCResult with λ, the ball B(Cλ, q(λ)) and whether m < n

    Raises:
        GeometryError: empty input or inconsistent shapes
        QPConvergenceError: budget exhausted (carries the last iterate)
    """
    if len(centers) == 0 or len(centers) != len(radii_sq):
        raise GeometryError(f"need matching nonempty centers/radii, got {len(centers)} and {len(radii_sq)}")

    C = np.vstack([np.asarray(c, dtype=float) for c in centers])
    r_sq = np.asarray(radii_sq, dtype=float)
    m, n = C.shape
    beck_exact = m < n
    if not beck_exact:
        logger.debug(f"RCC with m={m} balls in dimension n={n}: relaxation may be loose (m >= n)")

    if m == 1:
        return RCCResult(
            weights=SimplexWeights(np.ones(1)),
            ball=Ball(center=C[0], r_sq=float(r_sq[0])),
            iterations=0,
            beck_exact=beck_exact,
        )

    # q is invariant under translating all centers; shift by the mean
    offset = C.mean(axis=0)
    shifted = C - offset
    gram = shifted @ shifted.T
    linear = r_sq - np.einsum("ij,ij->i", shifted, shifted)

    lipschitz = 2.0 * float(scipy.linalg.eigvalsh(gram, subset_by_index=[m - 1, m - 1])[0])
    if lipschitz <= 0:
        # coincident centers: the objective is linear
        lam = np.zeros(m)
        lam[int(np.argmin(linear))] = 1.0
        return _make_result(shifted, offset, gram, linear, lam, 0, beck_exact)

    scale = 1.0 + max(float(np.max(np.abs(r_sq))), float(np.max(np.diag(gram))))
    step = 1.0 / lipschitz

    lam = np.full(m, 1.0 / m)
    y = lam.copy()
    theta = 1.0
    value = _dual_objective(gram, linear, lam)
    residual = np.inf

    for iteration in range(1, max_iter + 1):
        grad_y = 2.0 * gram @ y + linear
        lam_next = project_simplex(y - step * grad_y)
        value_next = _dual_objective(gram, linear, lam_next)

        if value_next > value:
            # adaptive restart
            theta = 1.0
            y = lam.copy()
            grad_y = 2.0 * gram @ y + linear
            lam_next = project_simplex(y - step * grad_y)
            value_next = _dual_objective(gram, linear, lam_next)

        theta_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * theta * theta))
        y = lam_next + ((theta - 1.0) / theta_next) * (lam_next - lam)
        lam, value, theta = lam_next, value_next, theta_next

        grad = 2.0 * gram @ lam + linear
        residual = float(np.linalg.norm(lam - project_simplex(lam - step * grad))) * lipschitz
        if residual <= tol * scale:
            logger.debug(f"RCC dual converged in {iteration} iterations (m={m}, q={value:.6e})")
            return _make_result(shifted, offset, gram, linear, lam, iteration, beck_exact)

    raise QPConvergenceError(
        max_iter, residual,
        _make_result(shifted, offset, gram, linear, lam, max_iter, beck_exact),
    )
