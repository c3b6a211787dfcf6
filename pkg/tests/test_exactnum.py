from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import svdvals
from scipy.optimize import linprog

from exactnum.linalg import det, eig_sym, identity, inverse, matmul, nullspace, rank, solve, svd, svd_decompose
from exactnum.lp import LpOutcome, LpProblem, LpStatus, conic_combination, lp_solve, verify_outcome
from exactnum.rational import format_rational, is_exact, parse_rational, to_fraction_matrix
from utils.exceptions import (DimensionMismatchError, LpCertificateError, NotSymmetricError, NumericalError,
                              SingularMatrixError)

F = Fraction


@pytest.mark.exactnum
class TestRational:
    """Parsing and formatting of exact scalars."""

    @pytest.mark.parametrize("text,expected", [
        ("3/4", F(3, 4)),
        ("-2", F(-2)),
        ("0.25", F(1, 4)),
        ("−1/2", F(-1, 2)),
        (7, F(7)),
        (0.1, F(1, 10)),
    ])
    def test_parse(self, text, expected):
        assert parse_rational(text) == expected

    def test_format_always_has_denominator(self):
        assert format_rational(F(-1)) == "-1/1"
        assert format_rational("6/8") == "3/4"

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_rational("one half")
        with pytest.raises(ValueError):
            parse_rational(True)

    def test_ragged_matrix(self):
        with pytest.raises(DimensionMismatchError):
            to_fraction_matrix([[1, 2], [3]])

    def test_is_exact(self):
        assert is_exact([[F(1), 2], [3, F(1, 2)]])
        assert not is_exact([1.5, F(1)])


@pytest.mark.exactnum
class TestLinalg:
    """Exact dense linear algebra and the floating spectral routines."""

    def test_inverse_roundtrip(self):
        m = to_fraction_matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
        assert (matmul(m, inverse(m)) == identity(3)).all()

    def test_singular_inverse(self):
        with pytest.raises(SingularMatrixError):
            inverse([[1, 2], [2, 4]])

    def test_det_and_rank(self):
        assert det([[1, 2], [3, 4]]) == -2
        assert rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]]) == 2

    def test_nullspace(self):
        m = to_fraction_matrix([[1, 1, 0], [0, 1, 1]])
        basis = nullspace(m)
        assert len(basis) == 1
        assert all(v == 0 for v in matmul(m, basis[0]))

    def test_solve(self):
        x = solve([[2, 0], [0, 4]], [1, 1])
        assert list(x) == [F(1, 2), F(1, 4)]

    def test_matmul_shape_check(self):
        with pytest.raises(DimensionMismatchError):
            matmul([[1, 2]], [[1, 2]])

    def test_eig_sym_matches_scipy(self):
        a = np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]])
        values, vectors = eig_sym(a)
        assert np.allclose(values, np.linalg.eigvalsh(a), atol=1e-9)
        assert np.allclose(vectors @ np.diag(values) @ vectors.T, a, atol=1e-9)

    def test_eig_sym_rejects_asymmetric(self):
        with pytest.raises(NotSymmetricError):
            eig_sym([[1.0, 2.0], [0.0, 1.0]])

    def test_eig_sym_unconverged_raises(self):
        a = [[2.0, 1.0], [1.0, 3.0]]
        with pytest.raises(NumericalError) as excinfo:
            eig_sym(a, max_sweeps=0)
        assert excinfo.value.residual > 0
        values, _ = eig_sym([[2.0, 0.0], [0.0, 1.0]], max_sweeps=0)
        assert list(values) == [1.0, 2.0]

    def test_svd_matches_scipy(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(4, 3))
        u, s, vt = svd_decompose(a)
        assert np.allclose(s, svdvals(a), atol=1e-9)
        assert np.allclose(u @ np.diag(s) @ vt, a, atol=1e-9)
        assert np.all(np.diff(s) <= 0)

    def test_svd_of_wide_matrix(self):
        a = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
        assert np.allclose(svd(a), [2.0, 1.0])


@pytest.mark.exactnum
class TestLp:
    """Exact simplex outcomes and their certificates."""

    def test_optimal_with_dual(self):
        # min x1 + 2 x2  s.t.  x1 + x2 = 1
        problem = LpProblem.from_arrays([1, 2], [[1, 1]], [1])
        outcome = lp_solve(problem)
        assert outcome.status == LpStatus.OPTIMAL
        assert outcome.x == (F(1), F(0))
        assert outcome.objective_value == 1
        assert outcome.y == (F(1),)
        assert verify_outcome(problem, outcome)

    def test_infeasible_with_farkas(self):
        problem = LpProblem.from_arrays([0, 0], [[1, 1]], [-1])
        outcome = lp_solve(problem)
        assert outcome.is_infeasible
        y = outcome.farkas
        assert y[0] * -1 > 0

    def test_unbounded_with_ray(self):
        problem = LpProblem.from_arrays([-1, 0], [[1, -1]], [0])
        outcome = lp_solve(problem)
        assert outcome.status == LpStatus.UNBOUNDED
        assert outcome.ray[0] > 0

    def test_free_variables(self):
        problem = LpProblem.from_arrays([1], [[1]], [-3], nonneg=[False])
        outcome = lp_solve(problem)
        assert outcome.x == (F(-3),)

    def test_matches_scipy_on_random_problems(self, rng):
        for _ in range(10):
            a = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
            x0 = [rng.randint(0, 3) for _ in range(5)]
            b = [sum(row[j] * x0[j] for j in range(5)) for row in a]
            c = [rng.randint(1, 5) for _ in range(5)]
            outcome = lp_solve(LpProblem.from_arrays(c, a, b))
            reference = linprog(c, A_eq=a, b_eq=b, bounds=[(0, None)] * 5, method="highs")
            assert outcome.is_optimal
            assert float(outcome.objective_value) == pytest.approx(reference.fun, abs=1e-7)

    def test_forged_outcome_fails_verification(self):
        problem = LpProblem.from_arrays([1, 2], [[1, 1]], [1])
        forged = LpOutcome(status=LpStatus.OPTIMAL, x=(F(0), F(1)), y=(F(1),), objective_value=F(2))
        assert not verify_outcome(problem, forged)

    def test_lp_solve_replays_its_certificate(self, mocker):
        problem = LpProblem.from_arrays([1, 2], [[1, 1]], [1])
        mocker.patch("exactnum.lp.verify_outcome", return_value=False)
        with pytest.raises(LpCertificateError):
            lp_solve(problem)

    def test_row_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            LpProblem.from_arrays([1, 2], [[1]], [1])

    def test_conic_combination(self):
        outcome = conic_combination([(1, 0), (0, 1)], (2, 3))
        assert outcome.x == (F(2), F(3))
        outside = conic_combination([(1, 0), (0, 1)], (-1, 3))
        assert outside.is_infeasible
