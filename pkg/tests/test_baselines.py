"""Power-type baseline iterations."""

import numpy as np
import pytest

from teneig import (
    DenseTensor,
    InputError,
    nqz,
    scaled_signless_laplacian,
    semi_symmetrize,
    shift_bound_gamma,
    sshopm,
)

from conftest import apply_loops, materialize_rank1


class TestShiftBound:
    def test_reference_values(self):
        assert shift_bound_gamma(1.0) == 144.0
        assert shift_bound_gamma(3.0) == 288.0
        assert shift_bound_gamma(5.0) == 432.0

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(InputError):
            shift_bound_gamma(0.0)
        with pytest.raises(InputError):
            shift_bound_gamma(-2.0)


class TestNqz:
    def test_rank_one_tensor_converges_immediately(self, rng):
        x1 = rng.uniform(0.5, 1.5, size=4)
        a = DenseTensor(materialize_rank1(x1, 3))
        report = nqz(a, rng.uniform(0.5, 1.5, size=4))
        assert report.converged
        assert report.evaluations <= 3

    def test_matrix_case_matches_perron_value(self, rng):
        m = rng.uniform(0.1, 1.0, size=(5, 5))
        report = nqz(DenseTensor(m), np.ones(5))
        perron = max(np.linalg.eigvals(m), key=lambda z: z.real).real
        assert report.converged
        assert abs(report.pair.lam - perron) <= 1e-10

    def test_laplacian_eigen_identity(self):
        a = scaled_signless_laplacian(1.0, 3, 20)
        report = nqz(a, np.ones(20))
        assert report.converged
        assert report.pair.residual <= 1e-10
        assert report.evaluations <= 2000
        x, lam = report.pair.x, report.pair.lam
        y = apply_loops(a.entries, x)
        assert np.linalg.norm(y - lam * x ** 2) <= 1e-9

    def test_laplacian_value_between_degree_bounds(self):
        # row sums are twice the vertex degrees, which bracket the value
        a = scaled_signless_laplacian(1.0, 3, 20)
        report = nqz(a, np.ones(20))
        assert 4.0 <= report.pair.lam <= 6.0

    def test_bracket_width_never_grows(self):
        a = scaled_signless_laplacian(1.0, 3, 20)
        report = nqz(a, np.ones(20))
        widths = [hi - lo for lo, hi in report.interval_history]
        assert len(widths) == report.iterations
        for prev, cur in zip(widths, widths[1:]):
            assert cur <= prev + 1e-12

    def test_bracket_contains_final_value(self):
        a = scaled_signless_laplacian(1.0, 4, 20)
        report = nqz(a, np.ones(20))
        lam = report.pair.lam
        for lo, hi in report.interval_history:
            assert lo - 1e-9 <= lam <= hi + 1e-9

    def test_positive_pair_has_expected_det_sign(self):
        a = scaled_signless_laplacian(1.0, 3, 20)
        report = nqz(a, np.ones(20))
        assert report.pair.det_sign == (-1) ** (20 - 1)

    def test_budget_exhaustion_reported(self):
        a = scaled_signless_laplacian(1.0, 3, 20)
        report = nqz(a, np.ones(20), max_eval=5)
        assert not report.converged
        assert report.evaluations == 5

    def test_zero_row_restart_then_stop(self):
        e = np.ones((2, 2, 2))
        e[1, :, :] = 0.0
        report = nqz(DenseTensor(e), np.array([1.0, 1.0]))
        assert not report.converged
        assert report.evaluations == 2

    def test_rejects_negative_tensor(self):
        e = np.ones((2, 2, 2))
        e[0, 1, 0] = -1.0
        with pytest.raises(InputError):
            nqz(DenseTensor(e), np.ones(2))

    def test_rejects_nonpositive_start(self):
        a = scaled_signless_laplacian(1.0, 3, 4)
        with pytest.raises(InputError):
            nqz(a, np.array([1.0, 0.0, 1.0, 1.0]))
        with pytest.raises(InputError):
            nqz(a, np.ones(3))


class TestSshopm:
    def test_laplacian_w1_reaches_four(self):
        a = scaled_signless_laplacian(1.0, 4, 20)
        report = sshopm(a, 1.0, np.ones(20))
        assert report.converged
        assert abs(report.pair.lam - 4.0) <= 1e-8
        assert report.evaluations <= 100

    def test_objective_monotone_above_convexity_shift(self):
        a = scaled_signless_laplacian(1.0, 4, 20)
        report = sshopm(a, shift_bound_gamma(1.0) + 1.0, np.ones(20))
        assert report.converged
        assert abs(report.pair.lam - 4.0) <= 1e-8
        for prev, cur in zip(report.objective_history,
                             report.objective_history[1:]):
            assert cur >= prev - 1e-12

    def test_large_shift_stalls_within_budget(self):
        a = scaled_signless_laplacian(1.0, 4, 20)
        report = sshopm(a, 1e6, np.ones(20), max_eval=200)
        assert not report.converged
        assert report.evaluations == 200

    def test_converged_pair_satisfies_eigen_identity(self):
        a = scaled_signless_laplacian(1.0, 4, 20)
        report = sshopm(a, 1.0, np.ones(20))
        x, lam = report.pair.x, report.pair.lam
        assert abs(np.linalg.norm(x) - 1.0) <= 1e-12
        y = apply_loops(a.entries, x)
        assert np.linalg.norm(y - lam * x) <= 1e-9

    def test_requires_symmetric_tensor(self, rng):
        general = DenseTensor(rng.uniform(size=(3, 3, 3)))
        with pytest.raises(InputError):
            sshopm(general, 1.0, np.ones(3))
        with pytest.raises(InputError):
            sshopm(semi_symmetrize(general), 1.0, np.ones(3))

    def test_rejects_negative_shift(self):
        a = scaled_signless_laplacian(1.0, 4, 20)
        with pytest.raises(InputError):
            sshopm(a, -0.5, np.ones(20))

    def test_rejects_zero_start(self):
        a = scaled_signless_laplacian(1.0, 4, 20)
        with pytest.raises(InputError):
            sshopm(a, 1.0, np.zeros(20))
