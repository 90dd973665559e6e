"""
Utility modules for the geopg-bench project.

This package contains helper utilities including:
- logger: Logging configuration and setup
- cache: thread-safe LRU cache for per-design spectral quantities
- file_handler: byte decoding and content fingerprints
"""

from .logger import setup_logging, get_logger

__all__ = ['setup_logging', 'get_logger']
