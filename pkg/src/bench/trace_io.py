"""
CSV serialization of solver traces.

Floats are written with repr() so that reading a file back reproduces the
emitted records exactly; inapplicable columns are empty.
"""

import csv
from pathlib import Path
from typing import Iterable, List, Optional, Union

from src.linalg.design import EvalCounters
from src.solvers.base import TraceRecord
from src.utils.logger import get_logger

logger = get_logger(__name__)

TRACE_HEADER = ["iter", "time_s", "F", "rel_gap", "gmap_inf", "t_k", "Rk_sq", "f_ev", "g_ev", "p_ev", "mvm"]


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _parse(text: str) -> Optional[float]:
    return None if text == "" else float(text)


def trace_rows(records: Iterable[TraceRecord]) -> List[List[str]]:
    rows = []
    for r in records:
        c = r.counters
        rows.append([
            str(r.iter), _fmt(r.time_s), _fmt(r.F), _fmt(r.rel_gap), _fmt(r.gmap_inf),
            _fmt(r.t_k), _fmt(r.Rk_sq),
            str(c.f_ev), str(c.g_ev), str(c.p_ev), str(c.mvm),
        ])
    return rows


def write_trace_csv(path: Union[str, Path], records: Iterable[TraceRecord]) -> Path:
    """Write records with the fixed TRACE_HEADER."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = trace_rows(records)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        writer.writerows(rows)
    logger.debug(f"Wrote {len(rows)} trace rows to {path}")
    return path


def read_trace_csv(path: Union[str, Path]) -> List[TraceRecord]:
    """
    Read a trace written by write_trace_csv.

    Raises:
        ValueError: header does not match TRACE_HEADER
    """
    path = Path(path)
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != TRACE_HEADER:
            raise ValueError(f"unexpected trace header in {path}: {header}")
        records = []
        for row in reader:
            records.append(TraceRecord(
                iter=int(row[0]),
                time_s=float(row[1]),
                F=float(row[2]),
                rel_gap=_parse(row[3]),
                gmap_inf=float(row[4]),
                t_k=_parse(row[5]),
                Rk_sq=_parse(row[6]),
                counters=EvalCounters(int(row[7]), int(row[8]), int(row[9]), int(row[10])),
            ))
    return records
