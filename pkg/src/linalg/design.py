"""
Row-sparse design matrices and evaluation counters.
"""

from dataclasses import dataclass, asdict
from functools import cached_property
from typing import Dict, Optional

import numpy as np
import scipy.sparse as sp

from src.utils.file_handler import calculate_hash
from src.utils.logger import get_logger

logger = get_logger(__name__)


class DimensionMismatchError(ValueError):
    """Raised when a vector does not match the design's shape."""


@dataclass
class EvalCounters:
    """Work counters of a single solver run.

    Only ever incremented; a run owns its instance.
    """
    f_ev: int = 0
    g_ev: int = 0
    p_ev: int = 0
    mvm: int = 0

    def snapshot(self) -> "EvalCounters":
        return EvalCounters(self.f_ev, self.g_ev, self.p_ev, self.mvm)

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class SparseDesign:
    """Design matrix A (p×n, CSR) with targets b.

    For classification data every entry of b is exactly +1 or -1.
    """
    A: sp.csr_matrix
    b: np.ndarray
    is_classification: bool = False

    def __post_init__(self):
        A = self.A
        if not sp.isspmatrix_csr(A):
            A = sp.csr_matrix(A)
            object.__setattr__(self, "A", A)
        b = np.asarray(self.b, dtype=float)
        object.__setattr__(self, "b", b)

        p, n = A.shape
        if b.shape != (p,):
            raise DimensionMismatchError(f"b has shape {b.shape}, expected ({p},)")

        indices = A.indices
        if indices.size and (indices.min() < 0 or indices.max() >= n):
            raise ValueError(f"column index out of range [0, {n})")

        # strictly increasing within every row
        if indices.size > 1:
            steps = np.diff(indices)
            row_starts = A.indptr[1:-1]
            within_row = np.ones(indices.size - 1, dtype=bool)
            within_row[row_starts[(row_starts > 0) & (row_starts < indices.size)] - 1] = False
            if np.any(steps[within_row] <= 0):
                raise ValueError("column indices must strictly increase within each row")

        if self.is_classification and not np.all(np.abs(b) == 1.0):
            raise ValueError("classification labels must be exactly +1 or -1")

        for arr in (A.data, A.indices, A.indptr, b):
            arr.setflags(write=False)

    @property
    def p(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def nnz(self) -> int:
        return self.A.nnz

    @cached_property
    def fingerprint(self) -> str:
        """Content hash used as a cache key for spectral quantities."""
        return calculate_hash(
            self.A.indptr, self.A.indices, self.A.data, self.b,
            str(self.A.shape),
        )

    def to_dense(self) -> np.ndarray:
        return self.A.toarray()

    def row(self, i: int) -> tuple:
        """(column indices, values) of row i."""
        start, end = self.A.indptr[i], self.A.indptr[i + 1]
        return self.A.indices[start:end], self.A.data[start:end]


def matvec(
    design: SparseDesign,
    v: np.ndarray,
    transpose: bool = False,
    counters: Optional[EvalCounters] = None,
) -> np.ndarray:
    """Exact sparse product A·v (or Aᵀ·v), counted as one MVM.

    Raises:
        DimensionMismatchError: v has the wrong length
    """
    v = np.asarray(v, dtype=float)
    expected = design.p if transpose else design.n
    if v.ndim != 1 or v.shape[0] != expected:
        op = "A^T v" if transpose else "A v"
        raise DimensionMismatchError(
            f"{op}: vector of shape {v.shape} for design {design.p}x{design.n}"
        )

    result = design.A.T @ v if transpose else design.A @ v
    if counters is not None:
        counters.mvm += 1
    return np.asarray(result, dtype=float)
