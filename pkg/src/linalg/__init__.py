"""
Dense/sparse linear algebra plumbing, LIBSVM I/O and synthetic datasets.
"""

from src.linalg.design import (
    DimensionMismatchError,
    EvalCounters,
    SparseDesign,
    matvec,
)
from src.linalg.libsvm import (
    LibsvmParseError,
    format_libsvm,
    load_libsvm,
    parse_libsvm,
)
from src.linalg.synthetic import (
    gen_synthetic_logistic,
    gen_synthetic_ls,
    truncate_smallest_eigenvalue,
)

__all__ = [
    "DimensionMismatchError",
    "EvalCounters",
    "SparseDesign",
    "matvec",
    "LibsvmParseError",
    "format_libsvm",
    "load_libsvm",
    "parse_libsvm",
    "gen_synthetic_logistic",
    "gen_synthetic_ls",
    "truncate_smallest_eigenvalue",
]
