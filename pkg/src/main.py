"""
Command-line entry point: `python -m src.main [options]`.
"""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.bench.experiment import ExperimentError, ExperimentProgress, run_experiment
from src.config import get_settings
from src.schemas.common import ProblemKind, RootFinderName, SolverVariant, TerminationCriterion
from src.schemas.experiment import ExperimentSpec
from src.utils.logger import get_logger, setup_logging

logger = get_logger(__name__)


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _synthetic(text: str) -> List[int]:
    values = _int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"--synthetic expects p,n,seed, got {text!r}")
    return values


def _solver_list(text: str) -> List[SolverVariant]:
    try:
        return [SolverVariant(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError:
        choices = ", ".join(v.value for v in SolverVariant)
        raise argparse.ArgumentTypeError(f"unknown solver in {text!r}; choose from {choices}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geopg-bench",
        description="Benchmark geometric proximal gradient methods on elastic-net problems.",
    )
    parser.add_argument("--problem", choices=[k.value for k in ProblemKind], default=ProblemKind.LS.value)

    source = parser.add_mutually_exclusive_group()
    source.add_argument("--data", help="LIBSVM dataset path")
    source.add_argument("--synthetic", type=_synthetic, metavar="P,N,SEED", help="generated dataset (default 200,100,1)")
    parser.add_argument("--seed", type=int, help="override the synthetic seed")

    parser.add_argument("--alpha", type=float, help="ridge weight / strong-convexity modulus")
    mu = parser.add_mutually_exclusive_group()
    mu.add_argument("--mu", type=_float_list, help="absolute l1 weights, comma-separated")
    mu.add_argument("--mu-scale", type=_float_list, help="c values for mu = c/p*||A^T b||_inf")

    parser.add_argument("--solver", type=_solver_list, help="comma-separated solver names")
    parser.add_argument("--memory", type=_int_list, help="memory sizes for lgeopg/lgeopg-b, comma-separated")
    parser.add_argument("--tol", type=float)
    parser.add_argument("--max-iter", type=int)
    parser.add_argument("--criterion", choices=[c.value for c in TerminationCriterion])
    parser.add_argument("--rootfinder", choices=[r.value for r in RootFinderName])
    parser.add_argument("--t0", type=float)
    parser.add_argument("--eta", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--out", help="output directory for CSV traces and reports")
    parser.add_argument("--max-workers", type=int, help="run cells on a thread pool")
    parser.add_argument("--format", choices=["markdown", "text"], default="markdown")
    parser.add_argument("--log-level", help="console log level")
    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    """Merge CLI flags over the configured experiment defaults."""
    defaults = get_settings().experiment
    synthetic = None
    if args.data is None:
        synthetic = list(args.synthetic or (200, 100, 1))
        if args.seed is not None:
            synthetic[2] = args.seed

    fields = {
        "problem": args.problem,
        "data_path": args.data,
        "synthetic": tuple(synthetic) if synthetic else None,
        "alpha": args.alpha if args.alpha is not None else defaults.alpha,
        "mu": args.mu,
        "mu_scales": args.mu_scale or defaults.mu_scales,
        "solvers": args.solver or defaults.solvers,
        "termination": args.criterion,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "rootfinder": args.rootfinder,
        "t0": args.t0,
        "eta": args.eta,
        "gamma": args.gamma,
        "output_dir": args.out or defaults.output_dir,
        "max_workers": args.max_workers or defaults.max_workers,
        "report_format": args.format,
    }
    if args.memory:
        fields["memory"] = args.memory
    return ExperimentSpec(**fields)


def _log_progress(progress: ExperimentProgress) -> None:
    logger.info(f"[{progress.percentage:5.1f}%] {progress.message}")


def main(argv: Optional[List[str]] = None) -> int:
    """Run the benchmark; 0 on success, 1 on a failed rate check, 2 on errors."""
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level or get_settings().log_level)

    try:
        spec = spec_from_args(args)
        report = run_experiment(spec, progress_callback=_log_progress)
    except ValidationError as e:
        logger.error(f"Invalid experiment parameters: {e}")
        print(f"error: invalid parameters: {e.errors()[0]['msg']}", file=sys.stderr)
        return 2
    except ExperimentError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 2

    print(report.summary_path.read_text())
    if not report.rate_ok:
        print(f"error: contraction check failed, see {report.rate_report_path}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
