"""
Elastic-net least squares and logistic regression, plus a diagonal smooth
quadratic used for exact-condition-number experiments.

The ridge term lives inside f so that α is the certified strong-convexity
modulus; h is the pure ℓ1 term (or zero).
"""

from typing import Optional, Union

import numpy as np
import scipy.linalg
import scipy.sparse.linalg as spla
from scipy.special import expit

from src.linalg.design import EvalCounters, SparseDesign, matvec
from src.problems.base import (
    CompositeProblem,
    L1Norm,
    SmoothFunction,
    ZeroRegularizer,
)
from src.utils.cache import cached, get_spectral_cache
from src.utils.logger import get_logger

logger = get_logger(__name__)

# above this the Gram matrix is not formed densely
DENSE_SPECTRUM_LIMIT = 1000


@cached(get_spectral_cache(), key_func=lambda design: design.fingerprint)
def gram_spectral_norm(design: SparseDesign) -> float:
    """λ_max(AᵀA), computed on the smaller of AᵀA and AAᵀ."""
    p, n = design.p, design.n
    if p == 0 or n == 0 or design.nnz == 0:
        return 0.0

    A = design.A
    if min(p, n) <= DENSE_SPECTRUM_LIMIT:
        gram = (A @ A.T if p < n else A.T @ A).toarray()
        k = gram.shape[0]
        value = scipy.linalg.eigvalsh(gram, subset_by_index=[k - 1, k - 1])[0]
    else:
        op = spla.LinearOperator((n, n), matvec=lambda v: A.T @ (A @ v), dtype=float)
        value = spla.eigsh(op, k=1, which="LA", return_eigenvectors=False)[0]

    logger.info(f"Computed lambda_max(A^T A)={value:.6e} for {p}x{n} design")
    return float(max(value, 0.0))


def mu_from_scale(design: SparseDesign, scale: float) -> float:
    """μ = scale/p · ‖Aᵀb‖∞ (benchmark μ rule)."""
    if design.p == 0:
        raise ValueError("empty design")
    return scale / design.p * float(np.max(np.abs(design.A.T @ design.b), initial=0.0))


def _check_weights(alpha: float, mu: float) -> None:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if mu < 0:
        raise ValueError(f"mu must be non-negative, got {mu}")


class LeastSquaresLoss(SmoothFunction):
    """f(x) = ‖Ax − b‖²/(2p) + (α/2)‖x‖²."""

    def __init__(self, design: SparseDesign, alpha: float):
        if design.p == 0:
            raise ValueError("least squares needs at least one sample")
        self.design = design
        self.alpha = float(alpha)

    @property
    def dim(self) -> int:
        return self.design.n

    def value(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> float:
        r = matvec(self.design, x, counters=counters) - self.design.b
        return float(r @ r) / (2 * self.design.p) + 0.5 * self.alpha * float(x @ x)

    def gradient(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> np.ndarray:
        r = matvec(self.design, x, counters=counters) - self.design.b
        return matvec(self.design, r, transpose=True, counters=counters) / self.design.p + self.alpha * x

    def hess_vec(self, x, v, counters=None):
        Av = matvec(self.design, v, counters=counters)
        return matvec(self.design, Av, transpose=True, counters=counters) / self.design.p + self.alpha * v

    def lipschitz(self) -> float:
        return gram_spectral_norm(self.design) / self.design.p + self.alpha


class LogisticLoss(SmoothFunction):
    """f(x) = mean log(1 + exp(−bᵢ aᵢᵀx)) + (α/2)‖x‖²."""

    def __init__(self, design: SparseDesign, alpha: float):
        if design.p == 0:
            raise ValueError("logistic regression needs at least one sample")
        if not design.is_classification:
            raise ValueError("logistic regression needs ±1 labels")
        self.design = design
        self.alpha = float(alpha)

    @property
    def dim(self) -> int:
        return self.design.n

    def _margins(self, x, counters):
        return self.design.b * matvec(self.design, x, counters=counters)

    def value(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> float:
        z = self._margins(x, counters)
        # log(1 + e^{-z}) without overflow for large |z|
        losses = np.log1p(np.exp(-np.abs(z))) + np.maximum(-z, 0.0)
        return float(np.mean(losses)) + 0.5 * self.alpha * float(x @ x)

    def gradient(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> np.ndarray:
        z = self._margins(x, counters)
        w = -self.design.b * expit(-z)
        return matvec(self.design, w, transpose=True, counters=counters) / self.design.p + self.alpha * x

    def hess_vec(self, x, v, counters=None):
        z = self._margins(x, counters)
        weights = expit(z) * expit(-z)
        Av = matvec(self.design, v, counters=counters)
        return matvec(self.design, weights * Av, transpose=True, counters=counters) / self.design.p + self.alpha * v

    def lipschitz(self) -> float:
        return gram_spectral_norm(self.design) / (4 * self.design.p) + self.alpha


class DiagonalQuadratic(SmoothFunction):
    """f(x) = ½ Σ dᵢ (xᵢ − cᵢ)²; α = min d, β = max d."""

    def __init__(self, diag: np.ndarray, center: np.ndarray):
        self.diag = np.asarray(diag, dtype=float)
        self.center = np.asarray(center, dtype=float)
        self.alpha = float(np.min(self.diag))

    @property
    def dim(self) -> int:
        return self.diag.size

    def value(self, x, counters=None):
        r = x - self.center
        return 0.5 * float(np.sum(self.diag * r * r))

    def gradient(self, x, counters=None):
        return self.diag * (x - self.center)

    def hess_vec(self, x, v, counters=None):
        return self.diag * v

    def lipschitz(self) -> float:
        return float(np.max(self.diag))


def make_elastic_net_ls(design: SparseDesign, alpha: float, mu: float) -> CompositeProblem:
    """Build F(x) = ‖Ax − b‖²/(2p) + (α/2)‖x‖² + μ‖x‖₁.

    Raises:
        ValueError: α <= 0 or μ < 0
    """
    _check_weights(alpha, mu)
    return CompositeProblem(
        smooth=LeastSquaresLoss(design, alpha),
        regularizer=L1Norm(mu),
        name=f"elastic-net-ls(p={design.p}, n={design.n}, alpha={alpha:g}, mu={mu:g})",
    )


def make_elastic_net_logistic(design: SparseDesign, alpha: float, mu: float) -> CompositeProblem:
    """Build F(x) = mean logistic loss + (α/2)‖x‖² + μ‖x‖₁.

    Raises:
        ValueError: α <= 0, μ < 0, or labels are not ±1
    """
    _check_weights(alpha, mu)
    return CompositeProblem(
        smooth=LogisticLoss(design, alpha),
        regularizer=L1Norm(mu),
        name=f"elastic-net-logistic(p={design.p}, n={design.n}, alpha={alpha:g}, mu={mu:g})",
    )


def make_smooth_quadratic(
    diag: Union[float, np.ndarray],
    center: Optional[np.ndarray] = None,
    dim: Optional[int] = None,
    mu: float = 0.0,
) -> CompositeProblem:
    """Diagonal quadratic with κ = max d / min d, optionally plus μ‖x‖₁.

    Args:
        diag: Positive curvatures (a scalar needs dim)
        center: Minimizer of f; zero by default
        dim: Dimension when diag is a scalar
        mu: ℓ1 weight; 0 gives h ≡ 0
    """
    diag = np.asarray(diag, dtype=float)
    if diag.ndim == 0:
        if dim is None:
            raise ValueError("dim is required when diag is a scalar")
        diag = np.full(dim, float(diag))
    if diag.size == 0 or np.any(diag <= 0):
        raise ValueError("curvatures must be positive")
    center = np.zeros_like(diag) if center is None else np.asarray(center, dtype=float)
    if center.shape != diag.shape:
        raise ValueError(f"center has shape {center.shape}, expected {diag.shape}")

    regularizer = L1Norm(mu) if mu > 0 else ZeroRegularizer()
    return CompositeProblem(
        smooth=DiagonalQuadratic(diag, center),
        regularizer=regularizer,
        name=f"quadratic(n={diag.size}, kappa={diag.max() / diag.min():g})",
    )
