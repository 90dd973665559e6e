"""
Tests for sparse designs, LIBSVM I/O and the synthetic generators.
"""

import io

import numpy as np
import pytest
import scipy.linalg
import scipy.sparse

from src.linalg.design import DimensionMismatchError, EvalCounters, SparseDesign, matvec
from src.linalg.libsvm import LibsvmParseError, format_libsvm, load_libsvm, parse_libsvm
from src.linalg.synthetic import gen_synthetic_logistic, gen_synthetic_ls, truncate_smallest_eigenvalue


@pytest.fixture
def diag_design():
    return SparseDesign(A=np.array([[1.0, 0.0], [0.0, 2.0]]), b=np.array([1.0, 1.0]))


class TestParseLibsvm:
    """Test parse_libsvm and friends."""

    def test_two_rows(self):
        """Rows, columns, values and ±1 labels are read back."""
        design = parse_libsvm(b"1 1:0.5 3:2\n-1 2:1\n")

        assert (design.p, design.n) == (2, 3)
        cols, vals = design.row(0)
        assert list(cols) == [0, 2]
        assert list(vals) == [0.5, 2.0]
        cols, vals = design.row(1)
        assert list(cols) == [1]
        assert list(vals) == [1.0]
        assert list(design.b) == [1.0, -1.0]
        assert design.is_classification

    def test_empty_input(self):
        """Empty input gives an empty design."""
        design = parse_libsvm("")
        assert (design.p, design.n) == (0, 0)
        assert design.b.size == 0

    def test_non_increasing_index(self):
        """Indices must strictly increase within a row."""
        with pytest.raises(LibsvmParseError, match="non-increasing index at line 1"):
            parse_libsvm("1 2:1 1:1\n")

    def test_index_below_one(self):
        """Index 0 is rejected with the offending line number."""
        with pytest.raises(LibsvmParseError, match="at line 2") as exc_info:
            parse_libsvm("1 1:1\n-1 0:3\n")
        assert exc_info.value.line_number == 2

    def test_malformed_token(self):
        """Tokens without a colon are rejected."""
        with pytest.raises(LibsvmParseError, match="malformed token"):
            parse_libsvm("1 1-0.5\n")

    def test_comments_and_blank_lines(self):
        """Comments and blank lines are skipped; real targets mean regression."""
        design = parse_libsvm("# header\n\n2.5 1:1 # trailing\n")
        assert design.p == 1
        assert design.b[0] == 2.5
        assert not design.is_classification

    def test_n_features_override(self):
        """n_features widens the design and rejects indices beyond it."""
        design = parse_libsvm("1 2:1\n", n_features=5)
        assert design.n == 5
        with pytest.raises(ValueError):
            parse_libsvm("1 4:1\n", n_features=3)

    def test_stream_input(self):
        """Binary streams are accepted."""
        design = parse_libsvm(io.BytesIO(b"-1 1:3\n"))
        assert design.to_dense().tolist() == [[3.0]]

    def test_format_then_parse_preserves_design(self):
        """Writing and re-reading keeps the content hash."""
        design = parse_libsvm("1 1:0.1 4:-2.25\n-1 2:1e-7\n")
        again = parse_libsvm(format_libsvm(design))

        assert again.fingerprint == design.fingerprint

    def test_load_from_disk(self, tmp_path):
        """load_libsvm reads a file path."""
        path = tmp_path / "small.svm"
        path.write_bytes(b"0.5 1:1 2:1\n-0.5 2:4\n")
        design = load_libsvm(path)
        assert design.to_dense().tolist() == [[1.0, 1.0], [0.0, 4.0]]


class TestSparseDesign:
    """Test SparseDesign validation."""

    def test_label_shape_checked(self):
        """b must have one entry per row."""
        with pytest.raises(DimensionMismatchError):
            SparseDesign(A=np.eye(2), b=np.ones(3))

    def test_classification_labels_checked(self):
        """Classification targets must be ±1."""
        with pytest.raises(ValueError, match="labels"):
            SparseDesign(A=np.eye(2), b=np.array([1.0, 0.5]), is_classification=True)

    def test_arrays_are_read_only(self, diag_design):
        """Stored arrays cannot be mutated."""
        with pytest.raises(ValueError):
            diag_design.b[0] = 5.0


class TestMatvec:
    """Test counted sparse products."""

    def test_forward(self, diag_design):
        """Av is counted as one product."""
        counters = EvalCounters()
        result = matvec(diag_design, np.array([3.0, 4.0]), counters=counters)
        assert result.tolist() == [3.0, 8.0]
        assert counters.mvm == 1

    def test_transpose(self, diag_design):
        """Aᵀv is counted as one product."""
        counters = EvalCounters()
        result = matvec(diag_design, np.array([3.0, 8.0]), transpose=True, counters=counters)
        assert result.tolist() == [3.0, 16.0]
        assert counters.mvm == 1

    def test_wrong_length(self, diag_design):
        """A vector of the wrong length is refused."""
        with pytest.raises(DimensionMismatchError):
            matvec(diag_design, np.ones(3))

    @pytest.mark.parametrize("transpose", [False, True])
    def test_random_sparse_matches_dense(self, transpose):
        """Random CSR products agree with the dense reference."""
        rng = np.random.default_rng(21)
        for trial in range(20):
            A = scipy.sparse.random(40, 25, density=0.15, format="csr", random_state=rng)
            A.sort_indices()
            design = SparseDesign(A=A, b=rng.standard_normal(40))
            dense = A.toarray()
            v = rng.standard_normal(40 if transpose else 25)
            expected = dense.T @ v if transpose else dense @ v

            result = matvec(design, v, transpose=transpose)
            assert np.allclose(result, expected, rtol=1e-12, atol=1e-14), trial

    def test_counters_snapshot_is_independent(self):
        """A snapshot does not follow later increments."""
        counters = EvalCounters(f_ev=1)
        snap = counters.snapshot()
        counters.f_ev += 1
        assert snap.as_dict() == {"f_ev": 1, "g_ev": 0, "p_ev": 0, "mvm": 0}


class TestSynthetic:
    """Test the seeded generators."""

    def test_deterministic(self):
        """The same seed gives the same data."""
        d1, x1 = gen_synthetic_ls(50, 100, seed=7)
        d2, x2 = gen_synthetic_ls(50, 100, seed=7)

        assert d1.fingerprint == d2.fingerprint
        assert np.array_equal(x1, x2)
        assert gen_synthetic_logistic(50, 100, 7).fingerprint == gen_synthetic_logistic(50, 100, 7).fingerprint

    def test_tall_design_is_singular(self):
        """For p > n the smallest eigenvalue of AᵀA is truncated to zero."""
        design, _ = gen_synthetic_ls(200, 100, seed=1)
        A = design.to_dense()
        eigs = scipy.linalg.eigvalsh(A.T @ A)
        assert eigs[0] <= 1e-8 * eigs[-1]

    def test_planted_density(self):
        """x̄ has ⌈0.1·n⌉ nonzeros."""
        _, x_bar = gen_synthetic_ls(100, 100, seed=3)
        assert np.count_nonzero(x_bar) == 10

    def test_logistic_labels(self):
        """Logistic labels are ±1."""
        design = gen_synthetic_logistic(60, 20, seed=2)
        assert design.is_classification
        assert set(np.unique(design.b)) <= {-1.0, 1.0}

    def test_unplanted_logistic_labels_are_balanced(self):
        """With x̄ = 0 about half the labels are +1."""
        design = gen_synthetic_logistic(20000, 5, seed=11, density=0.0)
        assert np.mean(design.b > 0) == pytest.approx(0.5, abs=0.02)

    def test_invalid_sizes(self):
        """Empty shapes are refused."""
        with pytest.raises(ValueError):
            gen_synthetic_ls(0, 5, seed=1)

    def test_truncation_keeps_other_directions(self):
        """Only the bottom eigenvalue changes."""
        rng = np.random.default_rng(0)
        A = rng.standard_normal((30, 5))
        before = scipy.linalg.eigvalsh(A.T @ A)
        after = scipy.linalg.eigvalsh(truncate_smallest_eigenvalue(A).T @ truncate_smallest_eigenvalue(A))

        assert after[0] == pytest.approx(0.0, abs=1e-9 * before[-1])
        assert np.allclose(after[1:], before[1:], rtol=1e-10)
