"""
Root finders for φ̄: Brent–Dekker on [0, 1] and a bracket-safeguarded
semi-smooth Newton method on [0, ∞).
"""

from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from src.rootfind.query import LineCase, LineQuery, LineSearchResult, RootFindingError
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_ROOT_TOL = 1e-10
DEFAULT_MAX_ITER = 100
MAX_DOUBLINGS = 60
BRENT_XTOL = 1e-15
# Newton steps must shrink |φ̄| by at least this factor
NEWTON_DECREASE = 0.9


def _result(query: LineQuery, s: float, case: LineCase, iterations: int, method: str) -> LineSearchResult:
    it = query.iterate(s)
    return LineSearchResult(
        point=it.x,
        s=float(s),
        iterate=it,
        case=case,
        iterations=iterations,
        method=method,
        residual=abs(query.phi_bar(s)) if case == LineCase.ROOT else 0.0,
    )


def _degenerate(query: LineQuery, method: str) -> LineSearchResult:
    return _result(query, 0.0, LineCase.DEGENERATE, 0, method)


def _brent_on(query: LineQuery, lo: float, hi: float, max_iter: int) -> Tuple[float, int]:
    root, info = brentq(
        query.phi_bar, lo, hi,
        xtol=BRENT_XTOL * max(1.0, hi),
        maxiter=max_iter,
        full_output=True,
        disp=False,
    )
    if not info.converged:
        raise RootFindingError(f"Brent-Dekker did not converge in {max_iter} iterations ({info.flag})")
    return float(root), int(info.iterations)


def _log_residual(query: LineQuery, s: float, tol: float, method: str) -> None:
    residual = abs(query.phi_bar(s))
    if residual > tol * query.scale:
        # the bracket hit floating-point resolution before the residual test
        logger.debug(
            f"{method}: |phi_bar(s)|={residual:.3e} above tol*scale={tol * query.scale:.3e} at s={s:.17g}"
        )


def find_xk_brent(
    query: LineQuery,
    tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> LineSearchResult:
    """
    Three-way dispatch on [0, 1].

    φ̄(0) ≥ 0 returns x, φ̄(1) ≤ 0 returns c, otherwise the Brent–Dekker
    root of φ̄ in (0, 1).

    Raises:
        RootFindingError: Brent–Dekker budget exceeded
    """
    if query.is_degenerate:
        return _degenerate(query, "brent")
    if query.phi_bar(0.0) >= 0:
        return _result(query, 0.0, LineCase.ANCHOR, 0, "brent")
    if query.phi_bar(1.0) <= 0:
        return _result(query, 1.0, LineCase.FAR_END, 0, "brent")

    s, iterations = _brent_on(query, 0.0, 1.0, max_iter)
    _log_residual(query, s, tol, "brent")
    return _result(query, s, LineCase.ROOT, iterations, "brent")


def _expand_bracket(query: LineQuery) -> Tuple[float, float]:
    """Double hi from 1 until φ̄(hi) ≥ 0; φ̄(lo) < 0 throughout."""
    lo, hi = 0.0, 1.0
    for _ in range(MAX_DOUBLINGS):
        if query.phi_bar(hi) >= 0:
            return lo, hi
        lo, hi = hi, 2.0 * hi
    raise RootFindingError(f"no sign change of phi_bar on [0, {hi:g}] after {MAX_DOUBLINGS} doublings")


def find_xk_ssn(
    query: LineQuery,
    tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> LineSearchResult:
    """
    Root of φ̄ on [0, ∞) by globalized semi-smooth Newton.

    After φ̄(0) ≥ 0 returns x, an upper bracket is found by doubling. Newton
    steps use the generalized derivative of φ̄; a step that leaves the
    bracket, meets a non-positive derivative, or fails to reduce |φ̄| is
    followed by bisection. Problems without a Hessian-vector product are
    handed to Brent–Dekker on the expanded bracket.

    Raises:
        RootFindingError: bracket or iteration budget exceeded
    """
    if query.is_degenerate:
        return _degenerate(query, "ssn")
    if query.phi_bar(0.0) >= 0:
        return _result(query, 0.0, LineCase.ANCHOR, 0, "ssn")

    target = tol * query.scale
    lo, hi = _expand_bracket(query)
    if abs(query.phi_bar(hi)) <= target:
        return _result(query, hi, LineCase.ROOT, 0, "ssn")

    if not query.problem.supports_hess_vec:
        logger.debug("No Hessian-vector product, falling back to Brent-Dekker on the bracket")
        s, iterations = _brent_on(query, lo, hi, max_iter)
        _log_residual(query, s, tol, "brent")
        return _result(query, s, LineCase.ROOT, iterations, "brent")

    s = lo
    value = query.phi_bar(s)
    bisect_next = False

    for iteration in range(1, max_iter + 1):
        candidate: Optional[float] = None
        if not bisect_next:
            slope = query.derivative(s)
            if slope is not None and slope > 0:
                candidate = s - value / slope
                if not lo < candidate < hi:
                    candidate = None
        newton = candidate is not None
        if not newton:
            candidate = 0.5 * (lo + hi)

        candidate_value = query.phi_bar(candidate)
        if abs(candidate_value) <= target:
            logger.debug(f"ssn converged in {iteration} iterations at s={candidate:.6g}")
            return _result(query, candidate, LineCase.ROOT, iteration, "ssn")

        if candidate_value < 0:
            lo = candidate
        else:
            hi = candidate

        bisect_next = newton and abs(candidate_value) > NEWTON_DECREASE * abs(value)
        if bisect_next:
            logger.debug(f"ssn: Newton step at s={candidate:.6g} failed the decrease test, bisecting")
        s, value = candidate, candidate_value

        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, hi):
            best = min((lo, hi), key=lambda v: abs(query.phi_bar(v)))
            _log_residual(query, best, tol, "ssn")
            return _result(query, best, LineCase.ROOT, iteration, "ssn")

    raise RootFindingError(f"semi-smooth Newton did not converge in {max_iter} iterations")


ROOT_FINDERS: Dict[str, Callable[..., LineSearchResult]] = {
    "brent": find_xk_brent,
    "ssn": find_xk_ssn,
}


def get_root_finder(name: str) -> Callable[..., LineSearchResult]:
    """Look up a root finder by its configuration name."""
    try:
        return ROOT_FINDERS[getattr(name, "value", name)]
    except KeyError:
        raise ValueError(f"unknown root finder {name!r}; expected one of {sorted(ROOT_FINDERS)}") from None
