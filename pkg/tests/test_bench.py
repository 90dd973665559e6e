"""
Tests for reference optima, trace CSVs, reports, the experiment runner and
the command-line entry point.
"""

import csv

import numpy as np
import pytest

from src.bench.experiment import ExperimentError, expand_cells, run_experiment
from src.bench.reference import compute_reference_fstar
from src.bench.report import audit_contraction
from src.bench.trace_io import TRACE_HEADER, read_trace_csv, write_trace_csv
from src.config import Settings
from src.linalg.design import EvalCounters, SparseDesign
from src.main import main
from src.problems import make_elastic_net_ls, make_smooth_quadratic
from src.schemas.common import SolverVariant
from src.schemas.experiment import ExperimentSpec
from src.schemas.solver import SolverConfig
from src.solvers import TraceRecord, geopg_b_run


def _record(iteration, r_sq, t=1.0):
    return TraceRecord(
        iter=iteration, time_s=0.0, F=1.0, rel_gap=None, gmap_inf=1.0,
        t_k=t, Rk_sq=r_sq, counters=EvalCounters(),
    )


def _read_rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


@pytest.fixture
def small_spec(tmp_path):
    return ExperimentSpec(
        synthetic=(40, 20, 1),
        alpha=1e-2,
        mu=[1e-3],
        solvers=["geopg-b", "apg-b"],
        tol=1e-8,
        output_dir=str(tmp_path / "run"),
        reference_max_iter=20000,
    )


class TestAuditContraction:
    """Test the per-iteration rate check."""

    def test_contracting_trace(self):
        """Ratios at or below 1 − √(αt) pass."""
        # αt = 0.01 gives factor 0.9
        trace = [_record(0, 1.0), _record(1, 0.9), _record(2, 0.81)]
        audit = audit_contraction(trace, alpha=0.01)
        assert audit.ok
        assert audit.checked == 2
        assert audit.worst_ratio is None

    def test_violation(self):
        """A radius above the bound is reported with its ratio."""
        trace = [_record(0, 1.0), _record(1, 0.95)]
        audit = audit_contraction(trace, alpha=0.01)
        assert not audit.ok
        assert audit.violations[0].iter == 1
        assert audit.worst_ratio == pytest.approx(0.95 / 0.9)

    def test_floor_rows_are_skipped(self):
        """Rows without a radius are not audited."""
        trace = [_record(0, 1.0), _record(1, 0.8), _record(2, None)]
        audit = audit_contraction(trace, alpha=0.01)
        assert audit.ok
        assert audit.checked == 1

    def test_empty_and_radius_free_traces(self):
        """Nothing to audit means nothing checked."""
        assert audit_contraction([], alpha=1.0).checked == 0
        assert audit_contraction([_record(0, None), _record(1, None)], alpha=1.0).checked == 0


class TestReference:
    """Test the reference optimum."""

    def test_separable_quadratic(self):
        """Closed-form optimum of a separable quadratic plus μ‖x‖₁."""
        # per coordinate argmin ½d(x − c)² + μ|x| is soft(c, μ/d)
        problem = make_smooth_quadratic(np.array([1.0, 4.0]), center=np.array([1.0, -1.0]), mu=0.5)
        reference = compute_reference_fstar(problem)

        assert reference.f_star == pytest.approx(0.84375, abs=1e-12)
        assert np.allclose(reference.x_star, [0.5, -0.875], atol=1e-10)
        assert reference.reached_floor
        assert set(reference.results) == {SolverVariant.APG_B, SolverVariant.GEOPG_B}

    def test_one_dim_elastic_net(self):
        """Scalar elastic net matches its closed form and a dense grid."""
        design = SparseDesign(A=np.array([[1.0]]), b=np.array([2.0]))
        problem = make_elastic_net_ls(design, alpha=0.5, mu=0.25)
        reference = compute_reference_fstar(problem)

        grid = np.linspace(0.0, 2.0, 200001)
        grid_min = np.min(0.5 * (grid - 2.0) ** 2 + 0.25 * grid ** 2 + 0.25 * np.abs(grid))
        assert reference.f_star == pytest.approx(141.0 / 144.0, abs=1e-13)
        assert reference.f_star <= grid_min + 1e-15
        assert reference.x_star[0] == pytest.approx(7.0 / 6.0, abs=1e-10)


class TestTraceCsv:
    """Test trace serialization."""

    def test_round_trip(self, tmp_path):
        """A written trace reads back unchanged."""
        problem = make_smooth_quadratic(np.array([1.0, 10.0]), center=np.array([2.0, -1.0]), mu=0.1)
        config = SolverConfig(variant="geopg-b", termination="gradmap", tol=1e-10)
        result = geopg_b_run(problem, config)
        path = write_trace_csv(tmp_path / "trace.csv", result.trace)

        assert _read_rows(path)[0] == TRACE_HEADER
        assert read_trace_csv(path) == result.trace

    def test_empty_columns_for_missing_values(self, tmp_path):
        """None fields become empty cells."""
        path = write_trace_csv(tmp_path / "nested" / "t.csv", [_record(0, None, t=None)])
        row = _read_rows(path)[1]
        assert row[TRACE_HEADER.index("Rk_sq")] == ""
        assert row[TRACE_HEADER.index("t_k")] == ""
        assert read_trace_csv(path)[0].Rk_sq is None

    def test_rejects_foreign_header(self, tmp_path):
        """Only files with the trace header are accepted."""
        path = tmp_path / "other.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            read_trace_csv(path)


class TestExperiment:
    """Test the benchmark runner."""

    def test_outputs(self, small_spec):
        """One CSV per cell plus both reports; every cell reaches F*."""
        report = run_experiment(small_spec, settings=Settings())
        out = report.output_dir

        assert sorted(p.name for p in report.csv_paths) == ["apg-b_mu0.csv", "geopg-b_mu0.csv"]
        assert all(p.exists() for p in report.csv_paths)
        assert report.rate_ok

        summary = report.summary_path.read_text()
        assert report.summary_path == out / "summary.md"
        assert "f-diff" in summary
        assert "eta: 0.5, gamma: 0.9, tol: 1e-08" in summary
        assert (out / "rate_report.md").exists()

        for block in report.mu_blocks:
            for cell in block.cells:
                assert cell.result.converged
                assert abs(cell.result.F - block.reference.f_star) <= 1e-8 * abs(block.reference.f_star) + 1e-12

    def test_deterministic_apart_from_timing(self, small_spec, tmp_path):
        """Two runs write identical rows except time_s."""
        first = run_experiment(small_spec, settings=Settings())
        second_spec = small_spec.model_copy(update={"output_dir": str(tmp_path / "again")})
        second = run_experiment(second_spec, settings=Settings())

        time_col = TRACE_HEADER.index("time_s")
        for a, b in zip(first.csv_paths, second.csv_paths):
            rows_a = [r[:time_col] + r[time_col + 1:] for r in _read_rows(a)]
            rows_b = [r[:time_col] + r[time_col + 1:] for r in _read_rows(b)]
            assert rows_a == rows_b

    def test_memory_sweep_cells(self, tmp_path):
        """Each memory size becomes its own cell and gets a trend note."""
        spec = ExperimentSpec(
            synthetic=(30, 12, 2), alpha=1e-2, mu=[1e-3], solvers=["lgeopg-b"], memory=[1, 3],
            tol=1e-8, output_dir=str(tmp_path), report_format="text", reference_max_iter=20000,
        )
        assert [c.label for c in expand_cells(spec)] == ["lgeopg-b_m1", "lgeopg-b_m3"]

        report = run_experiment(spec, settings=Settings())
        assert report.summary_path.name == "summary.txt"
        assert "BENCHMARK SUMMARY" in report.summary_path.read_text()
        assert any("iterations by memory" in note for note in report.notes)

    def test_missing_dataset(self, tmp_path):
        """An unreadable dataset is a set-up failure."""
        spec = ExperimentSpec(data_path=str(tmp_path / "missing.svm"), output_dir=str(tmp_path))
        with pytest.raises(ExperimentError, match="set-up"):
            run_experiment(spec, settings=Settings())

    def test_progress_reaches_all_cells(self, small_spec):
        """Progress starts at zero and ends at the cell count."""
        seen = []
        run_experiment(small_spec, settings=Settings(), progress_callback=lambda p: seen.append(p.completed_cells))
        assert seen[0] == 0
        assert seen[-1] == 2

    @pytest.mark.slow
    def test_tiny_alpha_iteration_comparison(self, tmp_path):
        """At α = 1e-8 the GeoPG-B vs APG-B iteration comparison is reported, not failed."""
        spec = ExperimentSpec(
            synthetic=(100, 50, 1), alpha=1e-8, mu_scales=[1e-3], solvers=["geopg-b", "apg-b"],
            tol=1e-8, max_iter=50000, output_dir=str(tmp_path), reference_max_iter=50000,
        )
        report = run_experiment(spec, settings=Settings())

        comparisons = [note for note in report.notes if "geopg-b used" in note]
        assert len(comparisons) == 1
        assert "apg-b" in comparisons[0]
        assert all(cell.result.converged for cell in report.mu_blocks[0].cells)


class TestCli:
    """Test the command-line entry point."""

    def test_success(self, tmp_path, capsys):
        """A valid run exits 0 and prints the summary."""
        code = main([
            "--synthetic", "30,10,2", "--alpha", "0.01", "--mu", "0.001",
            "--solver", "geopg-b,apg-b", "--tol", "1e-8", "--out", str(tmp_path),
        ])
        assert code == 0
        assert (tmp_path / "summary.md").exists()
        assert "Benchmark summary" in capsys.readouterr().out

    def test_invalid_parameters(self, tmp_path, capsys):
        """Out-of-range parameters exit 2."""
        code = main(["--synthetic", "30,10,2", "--alpha", "-1", "--out", str(tmp_path)])
        assert code == 2
        assert "invalid parameters" in capsys.readouterr().err

    def test_missing_data_file(self, tmp_path):
        """A missing data file exits 2."""
        assert main(["--data", str(tmp_path / "nope.svm"), "--out", str(tmp_path)]) == 2

    def test_unknown_solver(self):
        """argparse rejects unknown solver names."""
        with pytest.raises(SystemExit):
            main(["--solver", "newton"])
