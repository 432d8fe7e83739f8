import numpy as np
import pytest

from adrckit import (RiccatiProblem, alpha_controller_gains, alpha_observer_gains,
                     bandwidth_controller_gains, bandwidth_observer_gains,
                     linalg, lyapunov_decay_check, solve_are)
from adrckit.errors import DimensionError


class TestSolveAre:
    def test_second_order_analytic_solution(self):
        # Hand-substituted fixed point of the equation for n=2, alpha=1:
        # (A + I/2)'P + P(A + I/2) and 2 Pbb'P both equal [[.5,1],[1,2]].
        sol = solve_are(RiccatiProblem.for_chain(2, 1.0))
        np.testing.assert_allclose(sol.p, [[0.5, 0.5], [0.5, 1.0]], atol=1e-12)
        np.testing.assert_allclose(sol.gains, [0.5, 1.0], atol=1e-12)
        assert sol.residual < 1e-12

    def test_scalar_case(self):
        # alpha P - 2 P^2 = 0 has the definite solution P = alpha/2.
        sol = solve_are(RiccatiProblem.for_chain(1, 2.0))
        np.testing.assert_allclose(sol.p, [[1.0]], atol=1e-12)
        np.testing.assert_allclose(sol.gains, [1.0], atol=1e-12)

    def test_third_order_gains_and_poles(self):
        sol = solve_are(RiccatiProblem.for_chain(3, 1.0))
        np.testing.assert_allclose(sol.gains, [0.5, 1.5, 1.5], rtol=1e-10)
        a, b = linalg.integrator_chain(3)
        poles = linalg.poly_roots(linalg.charpoly(a - np.outer(b, sol.gains)))
        key = lambda z: (round(z.real, 6), round(z.imag, 6))
        expected = sorted([-0.5, -0.5 + np.sqrt(3) / 2 * 1j, -0.5 - np.sqrt(3) / 2 * 1j], key=key)
        np.testing.assert_allclose(sorted(poles, key=key), expected, atol=1e-9)

    def test_solution_symmetric_positive_definite(self):
        for n in range(1, 8):
            sol = solve_are(RiccatiProblem.for_chain(n, 1.5))
            np.testing.assert_allclose(sol.p, sol.p.T, atol=1e-12)
            minors = [np.linalg.det(sol.p[:k, :k]) for k in range(1, n + 1)]
            assert all(m > 0 for m in minors)

    def test_residuals_below_bound(self):
        for n in range(1, 8):
            for alpha in (0.5, 1.0, 2.0, 10.0):
                sol = solve_are(RiccatiProblem.for_chain(n, alpha))
                assert sol.residual < 1e-10

    def test_alternative_initializer_reaches_same_fixed_point(self):
        # Gains for poles at -2 alpha also stabilize the shifted chain; the
        # iteration must converge to the identical solution from there.
        for n in (2, 3, 5):
            alpha = 1.0
            default = solve_are(RiccatiProblem.for_chain(n, alpha))
            alt = solve_are(RiccatiProblem.for_chain(n, alpha),
                            initial_gains=bandwidth_controller_gains(n, 2 * alpha))
            assert alt.iterations > 1
            np.testing.assert_allclose(alt.p, default.p, rtol=1e-10, atol=1e-12)

    def test_non_stabilizing_initializer_rejected(self):
        with pytest.raises(ValueError):
            solve_are(RiccatiProblem.for_chain(2, 1.0), initial_gains=[0.01, 0.01])

    def test_problem_validation(self):
        a, b = linalg.integrator_chain(2)
        with pytest.raises(DimensionError):
            RiccatiProblem(a=np.ones((2, 2)), b=b, alpha=1.0)
        with pytest.raises(DimensionError):
            RiccatiProblem(a=a, b=np.array([1.0, 0.0]), alpha=1.0)
        with pytest.raises(ValueError):
            RiccatiProblem.for_chain(2, 0.0)
        with pytest.raises(DimensionError):
            RiccatiProblem.for_chain(11, 1.0)


class TestAlphaGains:
    def test_second_order_is_half_bandwidth(self):
        np.testing.assert_allclose(alpha_controller_gains(2, 1.0), [0.5, 1.0],
                                   rtol=1e-10)

    def test_second_order_alpha_two(self):
        # (s + 2)^2 = s^2 + 4s + 4 halves to (2, 2).
        np.testing.assert_allclose(alpha_controller_gains(2, 2.0), [2.0, 2.0],
                                   rtol=1e-10)

    def test_fourth_order(self):
        np.testing.assert_allclose(alpha_controller_gains(4, 1.0), [0.5, 2.0, 3.0, 2.0],
                                   rtol=1e-10)
        a, b = linalg.integrator_chain(4)
        poles = linalg.poly_roots(linalg.charpoly(a - np.outer(b, [0.5, 2.0, 3.0, 2.0])))
        np.testing.assert_allclose(poles.real, -0.5 * np.ones(4), atol=1e-8)

    @pytest.mark.parametrize("n", range(2, 7))
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 10.0])
    def test_equals_halved_bandwidth_gains(self, n, alpha):
        oracle = alpha_controller_gains(n, alpha)
        halved = bandwidth_controller_gains(n, alpha) / 2
        np.testing.assert_allclose(oracle, halved, rtol=1e-8)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_closed_loop_real_parts(self, n):
        alpha = 3.0
        gains = alpha_controller_gains(n, alpha)
        a, b = linalg.integrator_chain(n)
        poles = linalg.poly_roots(linalg.charpoly(a - np.outer(b, gains)))
        np.testing.assert_allclose(poles.real, -alpha / 2 * np.ones(n), atol=1e-8)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_observer_duality(self, n):
        alpha = 10.0
        oracle = alpha_observer_gains(n, alpha)
        halved = bandwidth_observer_gains(n, alpha) / 2
        np.testing.assert_allclose(oracle, halved, rtol=1e-8)


class TestLyapunovDecay:
    def test_converged_solution_certifies_decay(self):
        for n in range(1, 7):
            alpha = 1.0
            sol = solve_are(RiccatiProblem.for_chain(n, alpha))
            a, b = linalg.integrator_chain(n)
            a_cl = a - np.outer(b, sol.gains)
            assert lyapunov_decay_check(sol.p, a_cl, alpha) < 1e-9

    def test_perturbed_solution_detected(self):
        sol = solve_are(RiccatiProblem.for_chain(2, 1.0))
        p_bad = sol.p.copy()
        p_bad[0, 0] += 0.1
        a, b = linalg.integrator_chain(2)
        a_cl = a - np.outer(b, sol.gains)
        assert lyapunov_decay_check(p_bad, a_cl, 1.0) > 0.01

    def test_scalar_case_exact(self):
        dev = lyapunov_decay_check(np.array([[1.0]]), np.array([[-1.0]]), 2.0)
        assert dev == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            lyapunov_decay_check(np.eye(2), np.eye(3), 1.0)
