"""
Line search for the GeoPG point x_k: φ, φ̄ and the two root finders.
"""

from src.rootfind.finders import (
    ROOT_FINDERS,
    find_xk_brent,
    find_xk_ssn,
    get_root_finder,
)
from src.rootfind.query import (
    LineCase,
    LineQuery,
    LineSearchResult,
    RootFindingError,
    phi,
    phi_bar,
)

__all__ = [
    "ROOT_FINDERS",
    "find_xk_brent",
    "find_xk_ssn",
    "get_root_finder",
    "LineCase",
    "LineQuery",
    "LineSearchResult",
    "RootFindingError",
    "phi",
    "phi_bar",
]
