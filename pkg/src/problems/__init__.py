"""
Composite objectives F = f + h and the proximal-gradient primitives.
"""

from src.problems.base import (
    CompositeProblem,
    Iterate,
    L1Norm,
    NonFiniteValueError,
    Regularizer,
    SmoothFunction,
    ZeroRegularizer,
    prox_grad_step,
    soft_threshold,
    sufficient_decrease_holds,
)
from src.problems.elastic_net import (
    gram_spectral_norm,
    make_elastic_net_logistic,
    make_elastic_net_ls,
    make_smooth_quadratic,
    mu_from_scale,
)

__all__ = [
    "CompositeProblem",
    "Iterate",
    "L1Norm",
    "NonFiniteValueError",
    "Regularizer",
    "SmoothFunction",
    "ZeroRegularizer",
    "prox_grad_step",
    "soft_threshold",
    "sufficient_decrease_holds",
    "gram_spectral_norm",
    "make_elastic_net_logistic",
    "make_elastic_net_ls",
    "make_smooth_quadratic",
    "mu_from_scale",
]
