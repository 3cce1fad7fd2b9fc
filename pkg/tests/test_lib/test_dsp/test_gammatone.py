from unittest import TestCase

import numpy as np

from wge.exceptions import SignalError
from wge.lib.dsp import (
    erb_bandwidth, erb_space, design_gammatone_bank, gammatone_kernel, magnitude_response, peak_frequency,
    min_resolvable_frequency
)
from wge.lib.dsp.gammatone import erb_rate, inverse_erb_rate


class TestErb(TestCase):

    def test_bandwidth(self):
        self.assertAlmostEqual(erb_bandwidth(0), 24.7)
        self.assertAlmostEqual(erb_bandwidth(1000), 132.639)
        bandwidths = erb_bandwidth(np.linspace(0, 8000, 50))
        self.assertTrue(np.all(np.diff(bandwidths) > 0))
        with self.assertRaises(SignalError):
            erb_bandwidth(-1.0)

    def test_rate_inverse(self):
        frequencies = np.array([50.0, 440.0, 7600.0])
        np.testing.assert_allclose(inverse_erb_rate(erb_rate(frequencies)), frequencies)

    def test_space(self):
        np.testing.assert_array_equal(erb_space(50, 7600, 1), [50.0])
        np.testing.assert_array_equal(erb_space(50, 7600, 2), [50.0, 7600.0])
        centers = erb_space(50, 7600, 16)
        self.assertEqual(len(centers), 16)
        self.assertTrue(np.all(np.diff(centers) > 0))
        self.assertEqual((centers[0], centers[-1]), (50.0, 7600.0))
        spacing = np.diff(erb_rate(centers))
        np.testing.assert_allclose(spacing, spacing[0])

    def test_space_invalid(self):
        with self.assertRaises(SignalError):
            erb_space(50, 8000, 16)
        with self.assertRaises(SignalError):
            erb_space(500, 100, 4)
        with self.assertRaises(SignalError):
            erb_space(50, 7600, 0)


class TestBank(TestCase):

    def setUp(self):
        self.bank = design_gammatone_bank(n_filters=16, f_low=50, f_high=7600)

    def test_geometry(self):
        self.assertEqual(self.bank.kernels.shape, (31, 16))
        self.assertEqual((self.bank.width, self.bank.n_filters), (31, 16))
        self.assertTrue(np.all(np.diff(self.bank.center_freqs) > 0))
        with self.assertRaises(ValueError):
            self.bank.kernels[0, 0] = 1.0

    def test_unit_peak(self):
        for column in range(self.bank.n_filters):
            self.assertAlmostEqual(float(magnitude_response(self.bank.kernels[:, column]).max()), 1.0)

    def test_peaks_near_centers(self):
        resolvable = min_resolvable_frequency(16000, 31)
        self.assertAlmostEqual(resolvable, 774.19, places=2)
        checked = 0
        for center, column in zip(self.bank.center_freqs, self.bank.kernels.T):
            if center < resolvable:
                continue
            checked += 1
            self.assertLess(abs(peak_frequency(column) - center) / center, 0.05, center)
        self.assertGreaterEqual(checked, 8)

    def test_long_kernel_resolves_low_centers(self):
        kernel = gammatone_kernel(300.0, width=400)
        self.assertLess(abs(peak_frequency(kernel, n_points=4096) - 300.0) / 300.0, 0.05)

    def test_to_frame(self):
        frame = self.bank.to_frame()
        self.assertEqual(frame.shape, (16, 32))
        self.assertEqual(list(frame.columns[:3]), ['center_hz', 'tap_00', 'tap_01'])
        self.assertEqual(frame.index.name, 'filter')
        np.testing.assert_array_equal(frame['center_hz'].to_numpy(), self.bank.center_freqs)

    def test_invalid(self):
        with self.assertRaises(SignalError):
            design_gammatone_bank(f_high=8000)
        with self.assertRaises(SignalError):
            design_gammatone_bank(width=1)
