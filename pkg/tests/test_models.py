import math
import unittest

import numpy as np

from memriccati.exceptions import OrderBoundError, ValidationError
from memriccati.models import (Grid, Problem, SolutionSeries, constant_coefficients,
                               kernel_eval, ramp_coefficients)
from memriccati.order_functions import OrderSpec, Variant


class GridTestCase(unittest.TestCase):
    def test_step(self):
        for T, N in ((50.0, 129), (50.0, 2079), (1.0, 3)):
            grid = Grid(T, N)
            self.assertLessEqual(abs(grid.h * grid.N - T) / T, 1e-12)
            self.assertEqual(grid.times[0], 0.0)
            self.assertTrue(np.all(np.diff(grid.times) > 0))
            self.assertEqual(len(grid.nodes), N)

    def test_refined(self):
        self.assertEqual(Grid(50.0, 129).refined().N, 259)

    def test_invalid(self):
        for T, N in ((50.0, 0), (0.0, 10), (-1.0, 10), (float('inf'), 10)):
            with self.assertRaises(ValidationError):
                Grid(T, N)


class CoefficientTestCase(unittest.TestCase):
    def test_ramp(self):
        self.assertEqual(ramp_coefficients(2000).at(2000, 2000), (-1.0, 0.0, 1.0))
        self.assertEqual(ramp_coefficients(4).at(1, 4), (-0.25, 0.0, 0.25))
        self.assertEqual(ramp_coefficients(2000).at(0, 2000), (0.0, 0.0, 0.0))
        a, b, c = ramp_coefficients(4).evaluate(4)
        np.testing.assert_array_equal(a, [-0.25, -0.5, -0.75, -1.0])
        np.testing.assert_array_equal(b, np.zeros(4))
        np.testing.assert_array_equal(c, -a)

    def test_ramp_needs_nodes(self):
        with self.assertRaises(ValidationError):
            ramp_coefficients(0)

    def test_constant(self):
        coeffs = constant_coefficients(-1, 0, 1)
        for k in (1, 7, 2000):
            self.assertEqual(coeffs.at(k, 2000), (-1.0, 0.0, 1.0))
        a, b, c = coeffs.evaluate(5)
        np.testing.assert_array_equal(a, -np.ones(5))

    def test_continuous_ramp(self):
        abc = ramp_coefficients(10).continuous(50.0)
        self.assertEqual(abc(25.0), (-0.5, 0.0, 0.5))

    def test_non_finite(self):
        coeffs = constant_coefficients(float('nan'), 0, 0)
        with self.assertRaises(ValidationError):
            coeffs.evaluate(3)


class KernelTestCase(unittest.TestCase):
    def test_unit_lag(self):
        spec = OrderSpec.constant(0.5)
        self.assertAlmostEqual(kernel_eval(Variant.GAMMA, spec, 2.0, 1.0),
                               0.5641895835, places = 9)

    def test_quarter_lag(self):
        spec = OrderSpec.constant(0.5)
        self.assertAlmostEqual(kernel_eval(Variant.ALPHA, spec, 1.25, 1.0),
                               1.1283791671, places = 9)

    def test_singular(self):
        with self.assertRaises(ValidationError):
            kernel_eval(Variant.GAMMA, OrderSpec.constant(0.5), 1.0, 1.0)
        with self.assertRaises(ValidationError):
            kernel_eval(Variant.GAMMA, OrderSpec.constant(0.5), 1.0, 2.0)

    def test_positive(self):
        spec = OrderSpec.periodic(0.5, 0.5, math.pi / 2)
        rng = np.random.default_rng(3)
        for _ in range(200):
            tau, lag = rng.uniform(0, 10), rng.uniform(1e-3, 10)
            for variant in Variant:
                self.assertGreater(kernel_eval(variant, spec, tau + lag, tau), 0.0)

    def test_constant_order_variants_agree(self):
        spec = OrderSpec.constant(0.37)
        rng = np.random.default_rng(4)
        for _ in range(1000):
            tau = rng.uniform(0, 10)
            t = tau + rng.uniform(1e-3, 10)
            self.assertLessEqual(abs(kernel_eval(Variant.ALPHA, spec, t, tau)
                                     - kernel_eval(Variant.GAMMA, spec, t, tau)), 1e-15)


class ProblemTestCase(unittest.TestCase):
    def test_rejects_order_violation(self):
        with self.assertRaises(OrderBoundError) as cm:
            Problem(grid = Grid(50.0, 100), coeffs = ramp_coefficients(100), u0 = 0.0,
                    order = OrderSpec.periodic(0.1, 0.5, 1.0))
        self.assertIsNotNone(cm.exception.argument)

    def test_rejects_bad_u0(self):
        with self.assertRaises(ValidationError):
            Problem(grid = Grid(1.0, 2), coeffs = ramp_coefficients(2), u0 = float('nan'),
                    order = OrderSpec.constant(0.5))

    def test_variants_and_refinement(self):
        problem = Problem(grid = Grid(50.0, 129), coeffs = ramp_coefficients(129),
                          u0 = 0.0, order = OrderSpec.constant(0.9999))
        self.assertIs(problem.variant, Variant.GAMMA)
        self.assertIs(problem.with_variant(Variant.ALPHA).variant, Variant.ALPHA)
        refined = problem.refined()
        self.assertEqual(refined.grid.N, 259)
        self.assertEqual(refined.coefficients()[2][-1], 1.0)


class SolutionSeriesTestCase(unittest.TestCase):
    def test_sample_uses_initial_value(self):
        series = SolutionSeries(times = [1.0, 2.0], values = [2.0, 4.0], u0 = 0.0)
        np.testing.assert_allclose(series.sample([0.0, 0.5, 1.5, 2.0]), [0.0, 1.0, 3.0, 4.0])
        self.assertEqual(series.terminal, 4.0)

    def test_rejects_mismatch(self):
        with self.assertRaises(ValidationError):
            SolutionSeries(times = [1.0, 2.0], values = [1.0])
        with self.assertRaises(ValidationError):
            SolutionSeries(times = [1.0], values = [float('inf')])
