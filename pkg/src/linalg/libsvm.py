"""
LIBSVM text format reader and writer.

Each nonempty line is `<label> <idx>:<val> ...` with 1-based, strictly
increasing feature indices. Columns are 0-based internally.
"""

from pathlib import Path
from typing import BinaryIO, Optional, Union

import numpy as np
import scipy.sparse as sp

from src.linalg.design import SparseDesign
from src.utils.file_handler import read_content
from src.utils.logger import get_logger

logger = get_logger(__name__)


class LibsvmParseError(ValueError):
    """Malformed LIBSVM input; the message names the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"{message} at line {line_number}")
        self.line_number = line_number


def parse_libsvm(
    data: Union[bytes, str, BinaryIO],
    n_features: Optional[int] = None,
    classification: Optional[bool] = None,
) -> SparseDesign:
    """
    Parse LIBSVM text into a SparseDesign.

    Args:
        data: Raw bytes, decoded text, or a binary stream
        n_features: Column count override; must cover every index seen
        classification: Force/skip the ±1 label check. By default labels are
            treated as classes when every label is +1 or -1.

    Returns:
        SparseDesign with n = max index seen (or n_features)

    Raises:
        LibsvmParseError: malformed token, index < 1 or non-increasing index
    """
    if hasattr(data, "read"):
        data = data.read()
    text = read_content(data) if isinstance(data, bytes) else data

    labels = []
    indptr = [0]
    indices = []
    values = []
    max_index = 0

    for line_number, line in enumerate(text.splitlines(), start=1):
        # trailing comments are allowed by the reference tools
        line = line.split("#", 1)[0].strip()
        if not line:
            continue

        tokens = line.split()
        try:
            labels.append(float(tokens[0]))
        except ValueError:
            raise LibsvmParseError(f"malformed label {tokens[0]!r}", line_number) from None

        previous = 0
        for token in tokens[1:]:
            idx_text, sep, val_text = token.partition(":")
            if not sep:
                raise LibsvmParseError(f"malformed token {token!r}", line_number)
            try:
                idx = int(idx_text)
                val = float(val_text)
            except ValueError:
                raise LibsvmParseError(f"malformed token {token!r}", line_number) from None
            if idx < 1:
                raise LibsvmParseError(f"index {idx} < 1", line_number)
            if idx <= previous:
                raise LibsvmParseError("non-increasing index", line_number)
            previous = idx
            indices.append(idx - 1)
            values.append(val)

        max_index = max(max_index, previous)
        indptr.append(len(indices))

    n = max_index
    if n_features is not None:
        if n_features < max_index:
            raise ValueError(f"n_features={n_features} is smaller than max index {max_index}")
        n = n_features

    b = np.asarray(labels, dtype=float)
    if classification is None:
        classification = bool(b.size) and bool(np.all(np.abs(b) == 1.0))

    A = sp.csr_matrix(
        (np.asarray(values, dtype=float), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(len(labels), n),
    )
    logger.info(f"Parsed LIBSVM data: p={A.shape[0]}, n={n}, nnz={A.nnz}, classification={classification}")
    return SparseDesign(A=A, b=b, is_classification=classification)


def format_libsvm(design: SparseDesign) -> str:
    """
    Write a SparseDesign as LIBSVM text.

    Classification labels are written as integers, regression targets with
    repr() so that parsing the output reproduces the design exactly.
    """
    lines = []
    for i in range(design.p):
        label = design.b[i]
        head = f"{int(label):d}" if design.is_classification else repr(float(label))
        cols, vals = design.row(i)
        body = " ".join(f"{j + 1}:{float(v)!r}" for j, v in zip(cols, vals))
        lines.append(f"{head} {body}" if body else head)
    return "\n".join(lines) + ("\n" if lines else "")


def load_libsvm(path: Union[str, Path], n_features: Optional[int] = None) -> SparseDesign:
    """Read a LIBSVM file from disk."""
    path = Path(path)
    logger.info(f"Loading LIBSVM dataset from {path}")
    with open(path, "rb") as f:
        return parse_libsvm(f.read(), n_features=n_features)
