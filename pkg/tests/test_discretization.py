import math
import unittest

import numpy as np
from scipy import integrate

from memriccati import presets
from memriccati.discretization import (Discretization, WeightTable, jacobian_entry,
                                       residual, weights)
from memriccati.exceptions import ValidationError
from memriccati.models import Grid, Problem, constant_coefficients, ramp_coefficients
from memriccati.order_functions import LagSampling, OrderSpec, Variant
from memriccati.special_functions import gamma


NEAR_ONE = 1.0 - 1e-12


def make_problem(order, T = 1.0, N = 2, coeffs = None, u0 = 0.0, **kwargs):
    return Problem(grid = Grid(T, N), coeffs = coeffs or constant_coefficients(-1, 0, 1),
                   u0 = u0, order = order, **kwargs)


def random_problem(rng, variant):
    N = int(rng.integers(2, 9))
    order = OrderSpec.periodic(rng.uniform(0.35, 0.65), rng.uniform(0.0, 0.5),
                               rng.uniform(0.2, 2.0), kind = variant)
    coeffs = constant_coefficients(*rng.uniform(-1.0, 1.0, 3))
    return make_problem(order, T = rng.uniform(1.0, 5.0), N = N, coeffs = coeffs,
                        u0 = rng.uniform(-1.0, 1.0))


class WeightTestCase(unittest.TestCase):
    def test_backward_euler_limit(self):
        for variant in Variant:
            problem = make_problem(OrderSpec.constant(NEAR_ONE, variant), T = 5.0, N = 10)
            w = weights(problem, 10)
            h = problem.grid.h
            self.assertLessEqual(abs(w[0] - 1.0 / h), 1e-9 / h)
            self.assertLessEqual(np.max(np.abs(w[1:])), 1e-9 / h)

    def test_half_order_unit_step(self):
        problem = make_problem(OrderSpec.constant(0.5), T = 4.0, N = 4)
        w = weights(problem, 2)
        self.assertAlmostEqual(w[0], 1.1283791671, places = 9)
        self.assertAlmostEqual(w[1], (math.sqrt(2) - 1) / gamma(1.5), places = 14)

    def test_quadrature_oracle(self):
        # integrating the kernel against a piecewise-linear u reproduces the weights
        g, h, k = 0.3, 0.7, 5
        problem = make_problem(OrderSpec.constant(g), T = k * h, N = k)
        w = weights(problem, k)
        t_k = k * h
        for i in range(1, k + 1):
            left = (k - i) * h
            if i == 1:
                # singular end: weight (t_k - tau)^(-g)
                value, _ = integrate.quad(lambda tau: 1.0, left, t_k,
                                          weight = 'alg', wvar = (0.0, -g))
            else:
                value, _ = integrate.quad(lambda tau: (t_k - tau) ** (-g), left, left + h)
            self.assertAlmostEqual(w[i - 1], value / gamma(1.0 - g) / h, places = 9)

    def test_positive(self):
        for name in presets.EXAMPLES:
            for variant in Variant:
                table = WeightTable(presets.build_problem(name, variant, N = 129))
                for k in (1, 2, 64, 129):
                    w = table.row(k)
                    self.assertTrue(np.all(np.isfinite(w)) and np.all(w > 0))

    def test_non_increasing_with_a_single_order_per_row(self):
        for name in presets.EXAMPLES:
            table = WeightTable(presets.build_problem(name, Variant.ALPHA, N = 129))
            for k in (2, 64):
                self.assertTrue(np.all(np.diff(table.row(k)) <= 0))
        for order in (0.1, 0.5, 0.9999):
            table = WeightTable(make_problem(OrderSpec.constant(order), T = 50.0, N = 129))
            self.assertTrue(np.all(np.diff(table.row(129)) <= 0))

    def test_lag_varying_order_breaks_monotonicity(self):
        # each gamma weight carries its own order, so a rising order lifts later weights
        for name in ('example2', 'example3', 'example4'):
            w = WeightTable(presets.build_problem(name, Variant.GAMMA, N = 129)).row(129)
            self.assertFalse(np.all(np.diff(w) <= 0))

    def test_cached_rows_match_uncached(self):
        for variant in Variant:
            for sampling in LagSampling:
                problem = make_problem(OrderSpec.periodic(0.5, 0.3, 1.1, kind = variant),
                                       T = 10.0, N = 40, lag_sampling = sampling)
                table = WeightTable(problem)
                for k in range(1, 41):
                    np.testing.assert_array_equal(table.row(k), weights(problem, k))

    def test_midpoint_sampling_only_moves_gamma(self):
        order = OrderSpec.periodic(0.5, 0.3, 1.1)
        left = weights(make_problem(order, T = 10.0, N = 20), 20)
        mid = weights(make_problem(order, T = 10.0, N = 20,
                                   lag_sampling = LagSampling.MIDPOINT), 20)
        self.assertFalse(np.array_equal(left, mid))
        alpha = order.with_kind(Variant.ALPHA)
        np.testing.assert_array_equal(
            weights(make_problem(alpha, T = 10.0, N = 20), 20),
            weights(make_problem(alpha, T = 10.0, N = 20, lag_sampling = LagSampling.MIDPOINT), 20))

    def test_constant_order_variants_bitwise(self):
        order = OrderSpec.constant(0.9999)
        alpha = Discretization(make_problem(order.with_kind(Variant.ALPHA), T = 50.0, N = 129,
                                            coeffs = ramp_coefficients(129)))
        gamma_ = Discretization(make_problem(order, T = 50.0, N = 129,
                                             coeffs = ramp_coefficients(129)))
        self.assertTrue(np.array_equal(alpha.W, gamma_.W))
        u = np.random.default_rng(5).normal(size = 129)
        self.assertTrue(np.array_equal(alpha.residual_vector(u), gamma_.residual_vector(u)))

    def test_node_range(self):
        problem = make_problem(OrderSpec.constant(0.5))
        for k in (0, 3):
            with self.assertRaises(ValidationError):
                weights(problem, k)


class ResidualTestCase(unittest.TestCase):
    def test_backward_euler_first_row(self):
        problem = make_problem(OrderSpec.constant(NEAR_ONE), T = 1.0, N = 2)
        for x in (0.0, 0.3, -0.7):
            self.assertLessEqual(abs(residual(problem, np.array([x, 5.0]), 1)
                                     - (2 * x - x * x + 1)), 1e-8)

    def test_zero_coefficients_constant_u(self):
        problem = make_problem(OrderSpec.periodic(0.5, 0.4, 1.0), T = 10.0, N = 12,
                               coeffs = constant_coefficients(0, 0, 0), u0 = 3.0)
        u = np.full(12, 3.0)
        for k in range(1, 13):
            self.assertEqual(residual(problem, u, k), 0.0)
        self.assertTrue(np.all(Discretization(problem).residual_vector(u) == 0.0))

    def test_ramp_at_zero(self):
        problem = make_problem(OrderSpec.constant(0.5), T = 4.0, N = 4,
                               coeffs = ramp_coefficients(4))
        for k in range(1, 5):
            self.assertEqual(residual(problem, np.zeros(4), k), k / 4)

    def test_backward_euler_property(self):
        rng = np.random.default_rng(6)
        problem = make_problem(OrderSpec.constant(NEAR_ONE), T = 3.0, N = 30,
                               coeffs = ramp_coefficients(30))
        h = problem.grid.h
        a, b, c = problem.coefficients()
        for _ in range(5):
            u = rng.uniform(-2.0, 2.0, 30)
            f = Discretization(problem).residual_vector(u)
            previous = np.concatenate(([problem.u0], u[:-1]))
            classic = (u - previous) / h + a * u * u + b * u + c
            self.assertTrue(np.all(np.abs(f - classic) <= 1e-6 * np.maximum(1.0, np.abs(f))))

    def test_vector_matches_rows(self):
        rng = np.random.default_rng(8)
        for variant in Variant:
            problem = random_problem(rng, variant)
            u = rng.normal(size = problem.grid.N)
            f = Discretization(problem).residual_vector(u)
            for k in range(1, problem.grid.N + 1):
                self.assertAlmostEqual(f[k - 1], residual(problem, u, k), places = 10)

    def test_wrong_length(self):
        problem = make_problem(OrderSpec.constant(0.5))
        with self.assertRaises(ValidationError):
            Discretization(problem).residual_vector(np.zeros(3))


class JacobianTestCase(unittest.TestCase):
    def test_upper_part_is_zero(self):
        problem = make_problem(OrderSpec.periodic(0.5, 0.3, 1.0), T = 5.0, N = 6)
        u = np.linspace(-1, 1, 6)
        for n in range(1, 7):
            for m in range(n + 1, 7):
                self.assertEqual(jacobian_entry(problem, u, n, m), 0.0)
        J = Discretization(problem).jacobian(u)
        self.assertTrue(np.all(np.triu(J, 1) == 0.0))

    def test_backward_euler_diagonal(self):
        problem = make_problem(OrderSpec.constant(NEAR_ONE), T = 1.0, N = 2)
        self.assertLessEqual(abs(jacobian_entry(problem, np.zeros(2), 1, 1) - 2.0), 1e-8)

    def test_matrix_matches_entries(self):
        rng = np.random.default_rng(9)
        for variant in Variant:
            problem = random_problem(rng, variant)
            N = problem.grid.N
            u = rng.normal(size = N)
            J = Discretization(problem).jacobian(u)
            for n in range(1, N + 1):
                for m in range(1, N + 1):
                    self.assertAlmostEqual(J[n - 1, m - 1], jacobian_entry(problem, u, n, m),
                                           places = 12)

    def test_finite_differences(self):
        rng = np.random.default_rng(10)
        step = 1e-6
        for trial in range(20):
            problem = random_problem(rng, Variant.ALPHA if trial % 2 else Variant.GAMMA)
            N = problem.grid.N
            u = rng.normal(size = N)
            for n in range(1, N + 1):
                for m in range(1, n + 1):
                    up, down = u.copy(), u.copy()
                    up[m - 1] += step
                    down[m - 1] -= step
                    fd = (residual(problem, up, n) - residual(problem, down, n)) / (2 * step)
                    exact = jacobian_entry(problem, u, n, m)
                    self.assertLessEqual(abs(fd - exact), 1e-6 * max(1.0, abs(exact)))
