"""
Seeded synthetic elastic-net datasets.

A has standard Gaussian entries; the planted model has ceil(density·n)
nonzeros at distinct uniformly drawn positions with values 3·N(0,1); the
noise is 0.01·N(0,1). When p > n the smallest eigenvalue of AᵀA is truncated
to zero so that the ridge weight α is the exact strong-convexity modulus.
All outputs are pure functions of (p, n, seed) through numpy's PCG64.
"""

import math
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.special import expit

from src.linalg.design import SparseDesign
from src.utils.logger import get_logger

logger = get_logger(__name__)

PLANTED_DENSITY = 0.1
PLANTED_SCALE = 3.0
NOISE_SCALE = 0.01


def _check_sizes(p: int, n: int) -> None:
    if p < 1 or n < 1:
        raise ValueError(f"invalid sizes p={p}, n={n}; both must be >= 1")


def truncate_smallest_eigenvalue(A: np.ndarray) -> np.ndarray:
    """Return A with the smallest eigenvalue of AᵀA set to zero.

    Uses the symmetric eigendecomposition of AᵀA and removes the component
    of every row along the bottom eigenvector.
    """
    _, vecs = scipy.linalg.eigh(A.T @ A)
    v = vecs[:, 0]
    return A - np.outer(A @ v, v)


def _planted_model(rng: np.random.Generator, n: int, density: float) -> np.ndarray:
    x_bar = np.zeros(n)
    k = math.ceil(density * n)
    if k:
        support = rng.choice(n, size=k, replace=False)
        x_bar[support] = PLANTED_SCALE * rng.standard_normal(k)
    return x_bar


def _gaussian_design(rng: np.random.Generator, p: int, n: int) -> np.ndarray:
    A = rng.standard_normal((p, n))
    if p > n:
        A = truncate_smallest_eigenvalue(A)
    return A


def gen_synthetic_ls(
    p: int,
    n: int,
    seed: int,
    density: float = PLANTED_DENSITY,
) -> Tuple[SparseDesign, np.ndarray]:
    """Regression instance b = A x̄ + noise.

    Returns:
        (design, planted x̄)
    """
    _check_sizes(p, n)
    rng = np.random.default_rng(seed)
    A = _gaussian_design(rng, p, n)
    x_bar = _planted_model(rng, n, density)
    b = A @ x_bar + NOISE_SCALE * rng.standard_normal(p)

    logger.debug(f"Generated synthetic LS: p={p}, n={n}, seed={seed}, nnz(x_bar)={np.count_nonzero(x_bar)}")
    return SparseDesign(A=A, b=b, is_classification=False), x_bar


def gen_synthetic_logistic(
    p: int,
    n: int,
    seed: int,
    density: float = PLANTED_DENSITY,
) -> SparseDesign:
    """Classification instance with labels b_i = +1 w.p. 1/(1+exp ℓ_i).

    ℓ = A x̄ + noise; density=0 plants x̄ = 0 (labels are fair coin flips
    up to the noise).
    """
    _check_sizes(p, n)
    rng = np.random.default_rng(seed)
    A = _gaussian_design(rng, p, n)
    x_bar = _planted_model(rng, n, density)
    ell = A @ x_bar + NOISE_SCALE * rng.standard_normal(p)
    prob_positive = expit(-ell)
    b = np.where(rng.random(p) < prob_positive, 1.0, -1.0)

    logger.debug(f"Generated synthetic logistic: p={p}, n={n}, seed={seed}, positives={int(np.sum(b > 0))}")
    return SparseDesign(A=A, b=b, is_classification=True)
