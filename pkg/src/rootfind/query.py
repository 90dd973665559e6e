"""
Line queries for locating x_k on Line(x⁺_{k−1}, c_{k−1}).

For a query (x, c, t):

    φ(z)  = ⟨z⁺ − z, x − c⟩
    φ̄(s) = φ(x + s(c − x))

φ̄ is continuous and strictly increasing with slope at least αt‖x − c‖²/2,
so its unique root is located by bracketing.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np

from src.linalg.design import EvalCounters
from src.problems.base import CompositeProblem, Iterate, prox_grad_step
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEGENERATE_TOLERANCE = 1e-14


class RootFindingError(RuntimeError):
    """The root finder exhausted its iteration budget."""


class LineCase(str, Enum):
    """Which branch of the line search produced x_k."""
    ANCHOR = "anchor"        # φ̄(0) ≥ 0: x_k = x
    FAR_END = "far-end"      # φ̄(1) ≤ 0 (bounded search): x_k = c
    ROOT = "root"            # x_k = x + s(c − x) with φ̄(s) ≈ 0
    DEGENERATE = "degenerate"  # x ≈ c


@dataclass
class LineQuery:
    """
    φ̄ evaluator for one (x, c, t) triple.

    Evaluations are memoized by s, so the iterate at the accepted point never
    costs a second prox-gradient step. `anchor` may carry a precomputed
    Iterate at x with the same t.
    """
    problem: CompositeProblem
    x: np.ndarray
    c: np.ndarray
    t: float
    counters: Optional[EvalCounters] = None
    anchor: Optional[Iterate] = None
    _evaluations: Dict[float, Iterate] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        if self.x.shape != self.c.shape:
            raise ValueError(f"query points differ in shape: {self.x.shape} vs {self.c.shape}")
        if not self.t > 0:
            raise ValueError(f"step size must be positive, got {self.t}")
        self.direction = self.c - self.x
        self.gap_sq = float(self.direction @ self.direction)
        if self.anchor is not None and self.anchor.t == self.t and np.array_equal(self.anchor.x, self.x):
            self._evaluations[0.0] = self.anchor

    @property
    def is_degenerate(self) -> bool:
        return np.sqrt(self.gap_sq) <= DEGENERATE_TOLERANCE * (1.0 + float(np.linalg.norm(self.x)))

    @property
    def scale(self) -> float:
        """αt‖x − c‖², the certified slope modulus of φ̄."""
        return self.problem.alpha * self.t * self.gap_sq

    @property
    def evaluations(self) -> int:
        return len(self._evaluations)

    def point(self, s: float) -> np.ndarray:
        if s == 0.0:
            return self.x
        if s == 1.0:
            return self.c
        return self.x + s * self.direction

    def iterate(self, s: float) -> Iterate:
        s = float(s)
        it = self._evaluations.get(s)
        if it is None:
            it = prox_grad_step(self.problem, self.point(s), self.t, self.counters)
            self._evaluations[s] = it
        return it

    def phi_bar(self, s: float) -> float:
        it = self.iterate(s)
        # ⟨z⁺ − z, x − c⟩ = −⟨z⁺ − z, c − x⟩
        return -float((it.x_plus - it.x) @ self.direction)

    def derivative(self, s: float) -> Optional[float]:
        """Generalized derivative ⟨D(d − tHd) − d, −d⟩ with d = c − x.

        Returns None when the problem has no Hessian-vector product.
        """
        if not self.problem.supports_hess_vec:
            return None
        it = self.iterate(s)
        d = self.direction
        mask = self.problem.regularizer.prox_jacobian_mask(it.prox_argument, self.t)
        hd = self.problem.hess_vec(it.x, d, self.counters)
        return float((mask * (d - self.t * hd) - d) @ (-d))


def phi(
    problem: CompositeProblem,
    z: np.ndarray,
    x: np.ndarray,
    c: np.ndarray,
    t: float,
    counters: Optional[EvalCounters] = None,
) -> float:
    """φ_{t,x,c}(z) = ⟨z⁺ − z, x − c⟩ at an arbitrary point z."""
    it = prox_grad_step(problem, z, t, counters)
    return float((it.x_plus - it.x) @ (np.asarray(x, dtype=float) - np.asarray(c, dtype=float)))


def phi_bar(query: LineQuery, s: float) -> float:
    """φ̄(s) = φ(x + s(c − x)) for the query's (x, c, t)."""
    return query.phi_bar(s)


@dataclass(frozen=True, eq=False)
class LineSearchResult:
    """Outcome of a line search.

    `iterate` is the prox-gradient evaluation at `point` with the query's t.
    """
    point: np.ndarray
    s: float
    iterate: Iterate
    case: LineCase
    iterations: int
    method: str
    residual: float = 0.0
