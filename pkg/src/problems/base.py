"""
Composite problem contract F = f + h, the proximal-gradient map and the
sufficient-decrease test used by backtracking.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.linalg.design import EvalCounters
from src.utils.logger import get_logger

logger = get_logger(__name__)

SUFFICIENT_DECREASE_SLACK = 1e-12


class NonFiniteValueError(FloatingPointError):
    """A gradient or objective evaluation produced inf/nan."""


def soft_threshold(v: np.ndarray, theta: float) -> np.ndarray:
    """Componentwise sign(v)·max(|v| − θ, 0).

    Raises:
        ValueError: θ < 0
    """
    if theta < 0:
        raise ValueError(f"threshold must be non-negative, got {theta}")
    v = np.asarray(v, dtype=float)
    return np.sign(v) * np.maximum(np.abs(v) - theta, 0.0)


class Regularizer(ABC):
    """Nonsmooth convex term h with a closed-form prox."""

    @abstractmethod
    def value(self, x: np.ndarray) -> float:
        pass

    @abstractmethod
    def prox(self, v: np.ndarray, t: float) -> np.ndarray:
        """argmin_z h(z) + ‖z − v‖²/(2t)."""
        pass

    @abstractmethod
    def prox_jacobian_mask(self, v: np.ndarray, t: float) -> np.ndarray:
        """Diagonal of an element of the generalized Jacobian of prox at v."""
        pass


class L1Norm(Regularizer):
    """h(x) = μ‖x‖₁."""

    def __init__(self, mu: float):
        if mu < 0:
            raise ValueError(f"mu must be non-negative, got {mu}")
        self.mu = float(mu)

    def value(self, x: np.ndarray) -> float:
        return self.mu * float(np.sum(np.abs(x)))

    def prox(self, v: np.ndarray, t: float) -> np.ndarray:
        return soft_threshold(v, t * self.mu)

    def prox_jacobian_mask(self, v: np.ndarray, t: float) -> np.ndarray:
        # kinks |v_i| = tμ take the 0 branch
        return (np.abs(v) > t * self.mu).astype(float)

    def __repr__(self) -> str:
        return f"L1Norm(mu={self.mu!r})"


class ZeroRegularizer(Regularizer):
    """h ≡ 0; the composite method reduces to smooth geometric descent."""

    def value(self, x: np.ndarray) -> float:
        return 0.0

    def prox(self, v: np.ndarray, t: float) -> np.ndarray:
        return np.array(v, dtype=float, copy=True)

    def prox_jacobian_mask(self, v: np.ndarray, t: float) -> np.ndarray:
        return np.ones_like(v, dtype=float)

    def __repr__(self) -> str:
        return "ZeroRegularizer()"


class SmoothFunction(ABC):
    """α-strongly convex, β-smooth part f.

    Implementations count their matrix-vector products on the counters they
    receive; the per-call f/g counters are kept by CompositeProblem.
    """

    alpha: float

    @property
    @abstractmethod
    def dim(self) -> int:
        pass

    @abstractmethod
    def value(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> float:
        pass

    @abstractmethod
    def gradient(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> np.ndarray:
        pass

    def hess_vec(
        self,
        x: np.ndarray,
        v: np.ndarray,
        counters: Optional[EvalCounters] = None,
    ) -> np.ndarray:
        raise NotImplementedError(f"{type(self).__name__} has no Hessian-vector product")

    @property
    def supports_hess_vec(self) -> bool:
        return type(self).hess_vec is not SmoothFunction.hess_vec

    def lipschitz(self) -> Optional[float]:
        """Lipschitz constant β of ∇f, or None when unknown."""
        return None


@dataclass(frozen=True, eq=False)
class CompositeProblem:
    """F = f + h with certified strong-convexity modulus α of f.

    Instances are immutable; every evaluation takes the run's counters.
    """
    smooth: SmoothFunction
    regularizer: Regularizer
    name: str = "composite"

    @property
    def alpha(self) -> float:
        return self.smooth.alpha

    @property
    def beta(self) -> Optional[float]:
        return self.smooth.lipschitz()

    @property
    def dim(self) -> int:
        return self.smooth.dim

    @property
    def supports_hess_vec(self) -> bool:
        return self.smooth.supports_hess_vec

    def f_eval(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> float:
        if counters is not None:
            counters.f_ev += 1
        return self.smooth.value(x, counters)

    def grad_f(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> np.ndarray:
        if counters is not None:
            counters.g_ev += 1
        return self.smooth.gradient(x, counters)

    def hess_vec(
        self,
        x: np.ndarray,
        v: np.ndarray,
        counters: Optional[EvalCounters] = None,
    ) -> np.ndarray:
        return self.smooth.hess_vec(x, v, counters)

    def h_eval(self, x: np.ndarray) -> float:
        return self.regularizer.value(x)

    def prox_h(self, v: np.ndarray, t: float, counters: Optional[EvalCounters] = None) -> np.ndarray:
        if counters is not None:
            counters.p_ev += 1
        return self.regularizer.prox(v, t)

    def objective(self, x: np.ndarray, counters: Optional[EvalCounters] = None) -> float:
        """F(x) = f(x) + h(x)."""
        value = self.f_eval(x, counters) + self.h_eval(x)
        if not np.isfinite(value):
            raise NonFiniteValueError(f"non-finite objective {value} in {self.name}")
        return value


@dataclass(frozen=True, eq=False)
class Iterate:
    """One proximal-gradient evaluation at x with step t.

    x_plus = Prox_{th}(x − t∇f(x)), gmap = G_t(x) = (x − x_plus)/t and
    x_pp = x − gmap/α. grad keeps ∇f(x) for the sufficient-decrease test.
    """
    x: np.ndarray
    t: float
    x_plus: np.ndarray
    gmap: np.ndarray
    x_pp: np.ndarray
    grad: np.ndarray

    @property
    def gmap_norm_sq(self) -> float:
        return float(self.gmap @ self.gmap)

    @property
    def gmap_inf(self) -> float:
        return float(np.max(np.abs(self.gmap))) if self.gmap.size else 0.0

    @property
    def prox_argument(self) -> np.ndarray:
        return self.x - self.t * self.grad


def prox_grad_step(
    problem: CompositeProblem,
    x: np.ndarray,
    t: float,
    counters: Optional[EvalCounters] = None,
) -> Iterate:
    """Evaluate x⁺, G_t(x) and x⁺⁺ at x (one gradient, one prox).

    Raises:
        ValueError: t <= 0
        NonFiniteValueError: the gradient is not finite
    """
    if not t > 0:
        raise ValueError(f"step size must be positive, got {t}")
    x = np.asarray(x, dtype=float)
    grad = problem.grad_f(x, counters)
    if not np.all(np.isfinite(grad)):
        raise NonFiniteValueError(f"non-finite gradient in {problem.name}")

    x_plus = problem.prox_h(x - t * grad, t, counters)
    gmap = (x - x_plus) / t
    x_pp = x - gmap / problem.alpha
    return Iterate(x=x, t=t, x_plus=x_plus, gmap=gmap, x_pp=x_pp, grad=grad)


def sufficient_decrease_holds(
    problem: CompositeProblem,
    it: Iterate,
    counters: Optional[EvalCounters] = None,
) -> bool:
    """f(x⁺) ≤ f(x) − t⟨∇f(x), G_t(x)⟩ + (t/2)‖G_t(x)‖² (+ rounding slack)."""
    f_x = problem.f_eval(it.x, counters)
    f_plus = problem.f_eval(it.x_plus, counters)
    rhs = f_x - it.t * float(it.grad @ it.gmap) + 0.5 * it.t * it.gmap_norm_sq
    return f_plus <= rhs + SUFFICIENT_DECREASE_SLACK * (1.0 + abs(f_x))
