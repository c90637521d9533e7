import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinsqueeze.numerics import (
    BlowUpError,
    ConvergenceError,
    hermitian_propagator,
    log_binomial,
    periodic_quadrature,
    rk4_solve,
    rk4_step,
    takagi_values,
)


def random_unitary(n, rng):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestTakagiValues:
    def test_construction_oracle(self, rng):
        """Build A = U diag(s) U^T with known s; the values must come back."""
        for n in (1, 2, 3, 5):
            for _ in range(5):
                s = np.sort(rng.uniform(0.0, 2.0, size=n))[::-1]
                u = random_unitary(n, rng)
                a = u @ np.diag(s) @ u.T
                got = takagi_values(a)
                assert np.allclose(got, s, atol=1e-12)

    def test_antidiagonal_pair(self):
        a = np.array([[0.0, 0.3 + 0.4j], [0.3 + 0.4j, 0.0]])
        assert np.allclose(takagi_values(a), [0.5, 0.5], atol=1e-14)

    def test_diagonal_matrix_gives_moduli_sorted(self):
        a = np.diag([0.2 - 0.1j, -0.9j])
        assert np.allclose(takagi_values(a), [0.9, math.hypot(0.2, 0.1)], atol=1e-14)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            takagi_values(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            takagi_values(np.zeros((2, 3)))


class TestLogBinomial:
    def test_small_value(self):
        # C(30, 2) = 435
        assert math.isclose(log_binomial(30, 2), math.log(435), rel_tol=1e-13)

    @given(st.integers(min_value=0, max_value=400), st.data())
    def test_matches_integer_binomial(self, k, data):
        n = data.draw(st.integers(min_value=0, max_value=k))
        expected = math.comb(k, n)
        assert math.isclose(log_binomial(k, n), math.log(expected), rel_tol=1e-12, abs_tol=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            log_binomial(5, 6)
        with pytest.raises(ValueError):
            log_binomial(5, -1)


class TestPeriodicQuadrature:
    def test_bessel_series_oracle(self):
        """Mean of e^{cos t} equals sum of (1/4)^m / (m!)^2."""
        series = sum(0.25**m / math.factorial(m) ** 2 for m in range(25))
        got = periodic_quadrature(lambda t: np.exp(np.cos(t)), 1e-13)
        assert abs(got - series) < 1e-12

    def test_analytic_mean_is_one(self):
        # e^{e^{it}} has a single constant Fourier mode
        got = periodic_quadrature(lambda t: np.exp(np.exp(1j * t)), 1e-13)
        assert abs(got - 1.0) < 1e-12

    def test_pure_oscillation_averages_out(self):
        got = periodic_quadrature(lambda t: np.exp(3j * t), 1e-13)
        assert abs(got) < 1e-13

    def test_sawtooth_cannot_converge(self):
        with pytest.raises(ConvergenceError) as err:
            periodic_quadrature(lambda t: t + 0j, 1e-12)
        assert err.value.nodes > 0
        # the estimate it got stuck near is the true mean pi
        assert abs(err.value.last_estimate - math.pi) < 1e-3


class TestRk4:
    def test_fourth_order_convergence(self):
        def field(t, y):
            return y

        errs = []
        for h in (0.1, 0.05):
            y = np.array([1.0 + 0j])
            t = 0.0
            while t < 1.0 - 1e-12:
                y = rk4_step(field, t, y, h)
                t += h
            errs.append(abs(y[0] - math.e))
        slope = math.log(errs[0] / errs[1]) / math.log(2.0)
        assert 3.8 < slope < 4.2

    def test_solve_grid_and_endpoint(self):
        traj = rk4_solve(lambda t, y: 1j * y, np.array([1.0 + 0j]), 0.0105, step=1e-3)
        times = [t for t, _ in traj]
        assert times[0] == 0.0
        assert times[1] == 1e-3
        assert times[-1] == 0.0105
        assert len(times) == 12
        assert abs(traj[-1][1][0] - np.exp(1j * 0.0105)) < 1e-14

    def test_rotation_preserves_modulus(self):
        traj = rk4_solve(lambda t, y: 1j * y, np.array([1.0 + 0j]), 6.0, step=1e-3)
        mods = [abs(y[0]) for _, y in traj]
        assert max(abs(m - 1.0) for m in mods) < 1e-12

    def test_blowup_raises_with_time(self):
        # dy/dt = y^2 from y=3 leaves float range just after t = 1/3
        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(BlowUpError) as err:
                rk4_solve(lambda t, y: y * y, np.array([3.0 + 0j]), 1.0, step=1e-3)
        assert 0.3 < err.value.time < 0.4


class TestHermitianPropagator:
    def test_diagonal_phases(self):
        h = np.diag([1.0, -2.0, 0.5])
        u = hermitian_propagator(h, 0.7)
        assert np.allclose(u, np.diag(np.exp(-0.7j * np.diag(h))), atol=1e-14)

    def test_zero_angle_is_identity(self):
        h = np.array([[1.0, 2.0 - 1j], [2.0 + 1j, -1.0]])
        assert np.allclose(hermitian_propagator(h, 0.0), np.eye(2), atol=1e-14)

    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_unitary(self, seed):
        r = np.random.default_rng(seed)
        m = r.normal(size=(4, 4)) + 1j * r.normal(size=(4, 4))
        h = 0.5 * (m + m.conj().T)
        theta = float(r.uniform(-50, 50))
        u = hermitian_propagator(h, theta)
        assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-12)

    def test_group_property(self, rng):
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        h = 0.5 * (m + m.conj().T)
        u1 = hermitian_propagator(h, 0.4)
        u2 = hermitian_propagator(h, 1.1)
        assert np.allclose(u1 @ u2, hermitian_propagator(h, 1.5), atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            hermitian_propagator(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)
