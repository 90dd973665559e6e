"""
File handling utilities: byte decoding for dataset files and content
fingerprints for memoizing per-design computations.
"""

import hashlib
from typing import Optional, Union

import chardet
import numpy as np

from src.utils.logger import get_logger

logger = get_logger(__name__)


def read_content(
    content: bytes,
    encoding: Optional[str] = None
) -> str:
    """
    Decode file content with automatic encoding detection.

    Args:
        content: Raw bytes content
        encoding: Force specific encoding (optional)

    Returns:
        str: Decoded content
    """
    if not content:
        return ""

    # If encoding specified, use it
    if encoding:
        try:
            return content.decode(encoding)
        except UnicodeDecodeError:
            logger.warning(f"Failed to decode with {encoding}, auto-detecting")

    # LIBSVM dumps are almost always ASCII
    try:
        return content.decode("utf-8")
    except UnicodeDecodeError:
        pass

    detected = chardet.detect(content)
    detected_encoding = detected.get("encoding") or "utf-8"
    confidence = detected.get("confidence", 0) or 0

    logger.debug(f"Detected encoding: {detected_encoding} (confidence: {confidence:.2f})")

    try:
        return content.decode(detected_encoding)
    except (UnicodeDecodeError, TypeError, LookupError):
        # Fallback to latin-1 (never fails)
        logger.warning("Using latin-1 as fallback encoding")
        return content.decode("latin-1")


def calculate_hash(*parts: Union[str, bytes, np.ndarray]) -> str:
    """
    Calculate a content fingerprint for caching.

    Args:
        parts: Strings, bytes or numpy arrays; arrays contribute their
            dtype, shape and raw buffer

    Returns:
        str: MD5 hash hex string
    """
    digest = hashlib.md5()
    for part in parts:
        if isinstance(part, np.ndarray):
            arr = np.ascontiguousarray(part)
            digest.update(f"{arr.dtype.str}{arr.shape}".encode("utf-8"))
            digest.update(arr.tobytes())
        elif isinstance(part, bytes):
            digest.update(part)
        else:
            digest.update(str(part).encode("utf-8"))
    return digest.hexdigest()
