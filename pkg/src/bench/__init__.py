"""
Benchmark harness: reference optima, experiment cells, CSV traces and reports.
"""

from src.bench.experiment import (
    CellResult,
    ExperimentError,
    ExperimentProgress,
    ExperimentReport,
    run_experiment,
)
from src.bench.reference import ReferenceSolution, compute_reference_fstar
from src.bench.report import audit_contraction, generate_rate_report, generate_summary
from src.bench.trace_io import TRACE_HEADER, read_trace_csv, write_trace_csv

__all__ = [
    "CellResult",
    "ExperimentError",
    "ExperimentProgress",
    "ExperimentReport",
    "run_experiment",
    "ReferenceSolution",
    "compute_reference_fstar",
    "audit_contraction",
    "generate_rate_report",
    "generate_summary",
    "TRACE_HEADER",
    "read_trace_csv",
    "write_trace_csv",
]
