from unittest import TestCase
from unittest.mock import patch

import numpy as np

from wge.lib.tensor import finite_diff_grad, relative_error, run_gradient_suite, GradCheckReport


class TestFiniteDifferences(TestCase):

    def test_quadratic(self):
        x = np.array([1.0, -2.0, 0.5])
        numeric = finite_diff_grad(lambda v: float(np.sum(v ** 2)), x)
        np.testing.assert_allclose(numeric, 2 * x, atol=1e-8)
        np.testing.assert_array_equal(x, [1.0, -2.0, 0.5])

    def test_sum(self):
        np.testing.assert_allclose(finite_diff_grad(lambda v: float(np.sum(v)), np.zeros((2, 3))), 1.0)

    def test_relative_error(self):
        self.assertEqual(relative_error(np.ones(3), np.ones(3)), 0.0)
        self.assertGreater(relative_error(np.ones(3), -np.ones(3)), 1.0)


class TestReport(TestCase):

    def test_record_keeps_worst(self):
        report = GradCheckReport()
        report.record('op', 1e-6)
        report.record('op', 1e-3)
        report.record('op', 1e-7)
        self.assertEqual(report.errors['op'], 1e-3)
        self.assertEqual(report.failures, ['op'])
        self.assertFalse(report.passed)

    def test_nan_fails(self):
        report = GradCheckReport()
        report.record('op', float('nan'))
        self.assertFalse(report.passed)


class TestSuite(TestCase):

    @patch('wge.lib.tensor.gradcheck.LOGGER')
    def test_suite_passes(self, mock_logger):
        report = run_gradient_suite(instances=20, seed=0)
        self.assertTrue(report.passed, report.errors)
        for name in ('conv1d.input', 'conv1d.kernel', 'conv1d_transpose.kernel', 'prelu.slope', 'leaky_relu.input',
                     'instance_norm.input', 'dense.weight', 'concat_channels.second', 'l1_loss', 'mse'):
            self.assertIn(name, report.errors)
        self.assertEqual(mock_logger.info.call_count, len(report.errors))
