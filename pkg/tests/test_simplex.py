import numpy as np
import pytest
from scipy.optimize import linprog

from ridgegap.errors import SolverStall
from ridgegap.simplex import chebyshev_fit, independent_columns, simplex_max

from oracles import linprog_chebyshev


class TestSimplexMax:
    def test_textbook(self):
        # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        res = simplex_max([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
        np.testing.assert_allclose(res.x, [2, 6])
        assert res.value == pytest.approx(36.0)
        np.testing.assert_allclose(res.duals, [0, 1.5, 1])

    def test_degenerate_cycling_example(self):
        # Beale's example cycles under the largest-coefficient rule
        c = [0.75, -150, 0.02, -6]
        A = [[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]]
        res = simplex_max(c, A, [0, 0, 1])
        assert res.value == pytest.approx(0.05)

    def test_random_against_highs(self, rng):
        for _ in range(30):
            m, n = rng.integers(2, 12, size=2)
            A = rng.uniform(-1, 2, (m, n))
            A[-1] = np.abs(A[-1]) + 0.1  # keeps the feasible set bounded
            b = rng.uniform(0, 3, m)
            c = rng.normal(size=n)
            ref = linprog(-c, A_ub=A, b_ub=b, method="highs")
            res = simplex_max(c, A, b)
            assert res.value == pytest.approx(-ref.fun, abs=1e-9)
            assert np.all(A @ res.x <= b + 1e-9) and np.all(res.x >= -1e-12)

    def test_unbounded(self):
        with pytest.raises(ValueError):
            simplex_max([1, 0], [[-1, 1]], [1])

    def test_negative_rhs(self):
        with pytest.raises(ValueError):
            simplex_max([1], [[1]], [-1])

    def test_iteration_cap(self):
        with pytest.raises(SolverStall):
            simplex_max([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18], max_iter=1)


class TestChebyshev:
    def test_constant_fit(self):
        fit = chebyshev_fit(np.ones((3, 1)), np.array([0.0, 1.0, 4.0]))
        np.testing.assert_allclose(fit.coef, [2.0])
        assert fit.error == pytest.approx(2.0)

    def test_random_against_highs(self, rng):
        for _ in range(30):
            K, p = rng.integers(3, 25), rng.integers(1, 6)
            B, y = rng.normal(size=(K, p)), rng.normal(size=K)
            fit = chebyshev_fit(B, y)
            assert fit.error == pytest.approx(linprog_chebyshev(B, y), abs=1e-9)
            assert np.abs(y - B @ fit.coef).max() == pytest.approx(fit.error, abs=1e-9)


class TestIndependentColumns:
    def test_duplicates_and_zeros_dropped(self, rng):
        B = rng.normal(size=(6, 3))
        B = np.c_[B, 2 * B[:, 0], np.zeros(6)]
        np.testing.assert_array_equal(independent_columns(B), [0, 1, 2])

    def test_full_rank_keeps_all(self, rng):
        np.testing.assert_array_equal(independent_columns(rng.normal(size=(8, 5))), np.arange(5))


class TestIllConditionedFit:
    def test_many_saturated_shifts(self):
        # 256 unit-slope sigmoids on 17 nodes: nearly dependent columns
        t = np.linspace(0.0, 1.0, 17)
        y = np.abs(t - 0.4) - 0.25 * (t > 0.7)
        errs = []
        for m in (8, 256):
            B = 0.5 * (1 + np.tanh(0.5 * (t[:, None] - np.linspace(-1.5, 2.5, m))))
            fit = chebyshev_fit(B, y)
            assert fit.error == pytest.approx(np.abs(y - B @ fit.coef).max())
            assert fit.error <= linprog_chebyshev(B, y) + 1e-9
            errs.append(fit.error)
        # extra shifts must not make the fit collapse
        assert errs[1] <= errs[0] + 1e-3

    def test_exact_interpolation_when_possible(self):
        # sharp sigmoids on well separated nodes span every table
        t = np.arange(17.0)
        B = 0.5 * (1 + np.tanh(0.5 * (t[:, None] - np.linspace(-24, 40, 64))))
        y = np.sin(t)
        assert chebyshev_fit(B, y).error < 1e-8

    def test_pruning_off_matches_on_well_posed(self, rng):
        B, y = rng.normal(size=(20, 4)), rng.normal(size=20)
        assert chebyshev_fit(B, y, rcond=None).error == pytest.approx(chebyshev_fit(B, y).error, abs=1e-10)
