"""
Benchmark experiment runner: builds the problem family, computes reference
optima, runs every (solver, μ) cell, writes one CSV trace per cell plus the
summary and rate reports.
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Tuple

from src.bench.reference import ReferenceSolution, compute_reference_fstar
from src.bench.report import RateAudit, audit_contraction, generate_rate_report, generate_summary
from src.bench.trace_io import write_trace_csv
from src.config import Settings, get_settings
from src.linalg.design import SparseDesign
from src.linalg.libsvm import load_libsvm
from src.linalg.synthetic import gen_synthetic_logistic, gen_synthetic_ls
from src.problems.base import CompositeProblem
from src.problems.elastic_net import make_elastic_net_logistic, make_elastic_net_ls, mu_from_scale
from src.schemas.common import ProblemKind, SolverVariant
from src.schemas.experiment import ExperimentSpec
from src.schemas.solver import SolverConfig
from src.solvers import SolverResult, run_solver
from src.utils.logger import get_logger

logger = get_logger(__name__)


class ExperimentError(RuntimeError):
    """A cell or the experiment set-up failed; the message names the cell."""


@dataclass
class ExperimentProgress:
    total_cells: int
    completed_cells: int = 0
    message: str = ""

    @property
    def percentage(self) -> float:
        return 100.0 * self.completed_cells / self.total_cells if self.total_cells else 100.0


@dataclass(frozen=True)
class CellSpec:
    variant: SolverVariant
    memory: int = 0

    @property
    def label(self) -> str:
        return f"{self.variant.value}_m{self.memory}" if self.variant.limited_memory else self.variant.value


@dataclass
class CellResult:
    label: str
    variant: SolverVariant
    memory: int
    mu: float
    result: SolverResult
    csv_path: Path
    audit: Optional[RateAudit] = None


@dataclass
class MuBlock:
    mu: float
    index: int
    problem: CompositeProblem
    reference: ReferenceSolution
    cells: List[CellResult] = field(default_factory=list)


@dataclass
class ExperimentReport:
    problem: str
    data: str
    alpha: float
    eta: float
    gamma: float
    tol: float
    criterion: str
    rootfinder: str
    output_dir: Path
    mu_blocks: List[MuBlock] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    summary_path: Optional[Path] = None
    rate_report_path: Optional[Path] = None

    @property
    def rate_ok(self) -> bool:
        return all(c.audit.ok for b in self.mu_blocks for c in b.cells if c.audit is not None)

    @property
    def csv_paths(self) -> List[Path]:
        return [c.csv_path for b in self.mu_blocks for c in b.cells]


def load_design(spec: ExperimentSpec) -> Tuple[SparseDesign, str]:
    """Design matrix and a short description of its source."""
    if spec.data_path is not None:
        return load_libsvm(spec.data_path), spec.data_path
    p, n, seed = spec.synthetic
    if spec.problem == ProblemKind.LOGISTIC:
        design = gen_synthetic_logistic(p, n, seed)
    else:
        design, _ = gen_synthetic_ls(p, n, seed)
    return design, f"synthetic(p={p}, n={n}, seed={seed})"


def build_problem(spec: ExperimentSpec, design: SparseDesign, mu: float) -> CompositeProblem:
    if spec.problem == ProblemKind.LOGISTIC:
        return make_elastic_net_logistic(design, spec.alpha, mu)
    return make_elastic_net_ls(design, spec.alpha, mu)


def expand_cells(spec: ExperimentSpec) -> List[CellSpec]:
    """One cell per solver, one per memory size for the limited-memory variants."""
    cells = []
    for variant in spec.solvers:
        if variant.limited_memory:
            cells.extend(CellSpec(variant, m) for m in spec.memory)
        else:
            cells.append(CellSpec(variant))
    return cells


def _solver_config(spec: ExperimentSpec, settings: Settings, cell: CellSpec, f_star: float) -> SolverConfig:
    overrides = {
        "termination": spec.termination,
        "tol": spec.tol,
        "max_iter": spec.max_iter,
        "rootfinder": spec.rootfinder,
        "t0": spec.t0,
        "eta": spec.eta,
        "gamma": spec.gamma,
        "memory": cell.memory,
        "f_star": f_star,
    }
    overrides.update(spec.solver_overrides.get(cell.variant, {}))
    return SolverConfig.from_settings(cell.variant, settings, **overrides)


def _run_cell(
    spec: ExperimentSpec,
    settings: Settings,
    block: MuBlock,
    cell: CellSpec,
    output_dir: Path,
) -> CellResult:
    try:
        config = _solver_config(spec, settings, cell, block.reference.f_star)
        result = run_solver(block.problem, config)
        csv_path = write_trace_csv(output_dir / f"{cell.label}_mu{block.index}.csv", result.trace)
    except Exception as e:
        logger.error(f"Cell {cell.label} mu={block.mu:.3e} failed: {e}", exc_info=True)
        raise ExperimentError(f"cell {cell.label} mu={block.mu:.3e} failed: {e}") from e

    audit = None
    if cell.variant.is_geometric:
        audit = audit_contraction(result.trace, config.alpha or block.problem.alpha)
        if not audit.ok:
            logger.error(f"Cell {cell.label} mu={block.mu:.3e}: {len(audit.violations)} contraction violations")

    logger.info(
        f"Cell {cell.label} mu={block.mu:.3e}: {result.status.value} after {result.iterations} iterations, "
        f"F={result.F:.15e}"
    )
    return CellResult(
        label=cell.label,
        variant=cell.variant,
        memory=cell.memory,
        mu=block.mu,
        result=result,
        csv_path=csv_path,
        audit=audit,
    )


def _soft_checks(spec: ExperimentSpec, blocks: List[MuBlock]) -> List[str]:
    """Qualitative comparisons; reported, never failed."""
    notes = []
    for block in blocks:
        by_label = {c.label: c.result for c in block.cells}
        geo, apg = by_label.get(SolverVariant.GEOPG_B.value), by_label.get(SolverVariant.APG_B.value)
        if geo is not None and apg is not None:
            if geo.iterations < apg.iterations:
                notes.append(
                    f"mu={block.mu:.3e}: geopg-b used fewer iterations than apg-b "
                    f"({geo.iterations} vs {apg.iterations})"
                )
            else:
                message = (
                    f"mu={block.mu:.3e}: soft check failed, geopg-b used {geo.iterations} iterations "
                    f"vs {apg.iterations} for apg-b (alpha={spec.alpha:g})"
                )
                logger.warning(message)
                notes.append(message)

        for variant in (SolverVariant.LGEOPG, SolverVariant.LGEOPG_B):
            sweep = sorted((c.memory, c.result.iterations) for c in block.cells if c.variant == variant)
            if len(sweep) > 1:
                counts = [n for _, n in sweep]
                trend = "non-increasing" if all(a >= b for a, b in zip(counts, counts[1:])) else "not monotone"
                notes.append(
                    f"mu={block.mu:.3e}: {variant.value} iterations by memory "
                    f"{', '.join(f'm={m}: {n}' for m, n in sweep)} ({trend})"
                )
    return notes


def run_experiment(
    spec: ExperimentSpec,
    settings: Optional[Settings] = None,
    progress_callback: Optional[Callable[[ExperimentProgress], None]] = None,
) -> ExperimentReport:
    """
    Run every (solver, μ) cell of an experiment.

    Args:
        spec: Experiment description
        settings: Defaults for unspecified solver parameters
        progress_callback: Called after set-up and after every finished cell

    Returns:
        ExperimentReport with CSV paths, reports and the rate verdict

    Raises:
        ExperimentError: I/O or solver failure, with the failing cell named
    """
    settings = settings or get_settings()
    output_dir = Path(spec.output_dir)
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        design, data = load_design(spec)
    except (OSError, ValueError) as e:
        logger.error(f"Experiment set-up failed: {e}", exc_info=True)
        raise ExperimentError(f"experiment set-up failed: {e}") from e

    mus = spec.mu if spec.mu is not None else [mu_from_scale(design, c) for c in spec.mu_scales]
    cells = expand_cells(spec)
    progress = ExperimentProgress(total_cells=len(mus) * len(cells), message="computing reference optima")
    if progress_callback:
        progress_callback(progress)

    blocks = []
    for index, mu in enumerate(mus):
        try:
            problem = build_problem(spec, design, mu)
            reference = compute_reference_fstar(problem, spec.reference_max_iter, spec.reference_floor)
        except Exception as e:
            logger.error(f"Reference solve for mu={mu:.3e} failed: {e}", exc_info=True)
            raise ExperimentError(f"reference solve for mu={mu:.3e} failed: {e}") from e
        blocks.append(MuBlock(mu=mu, index=index, problem=problem, reference=reference))

    jobs = [(block, cell) for block in blocks for cell in cells]
    lock = threading.Lock()

    def run_job(job):
        block, cell = job
        cell_result = _run_cell(spec, settings, block, cell, output_dir)
        with lock:
            progress.completed_cells += 1
            progress.message = f"finished {cell.label} mu={block.mu:.3e}"
            if progress_callback:
                progress_callback(progress)
        return cell_result

    workers = spec.max_workers
    logger.info(f"Running {len(jobs)} cells on {data} with {workers} worker(s)")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_job, jobs))
    else:
        results = [run_job(job) for job in jobs]

    for (block, _), cell_result in zip(jobs, results):
        block.cells.append(cell_result)

    solver_defaults = settings.solver
    report = ExperimentReport(
        problem=spec.problem.value,
        data=data,
        alpha=spec.alpha,
        eta=spec.eta if spec.eta is not None else solver_defaults.eta,
        gamma=spec.gamma if spec.gamma is not None else solver_defaults.gamma,
        tol=spec.tol if spec.tol is not None else solver_defaults.tol,
        criterion=(spec.termination.value if spec.termination else solver_defaults.criterion),
        rootfinder=(spec.rootfinder.value if spec.rootfinder else solver_defaults.rootfinder),
        output_dir=output_dir,
        mu_blocks=blocks,
        notes=_soft_checks(spec, blocks),
    )

    suffix = "md" if spec.report_format == "markdown" else "txt"
    try:
        report.summary_path = output_dir / f"summary.{suffix}"
        report.summary_path.write_text(generate_summary(report, spec.report_format))
        report.rate_report_path = output_dir / f"rate_report.{suffix}"
        report.rate_report_path.write_text(generate_rate_report(report, spec.report_format))
    except OSError as e:
        logger.error(f"Writing reports failed: {e}", exc_info=True)
        raise ExperimentError(f"writing reports to {output_dir} failed: {e}") from e

    logger.info(f"Experiment finished: {len(results)} cells, rate check {'passed' if report.rate_ok else 'FAILED'}")
    return report
