from unittest import TestCase

import numpy as np
from scipy.linalg import toeplitz
from scipy.signal import lfilter

from wge.exceptions import MetricError
from wge.lib.metrics import lpc, levinson_durbin, autocorrelation, lpc_to_cepstrum


class TestAutocorrelation(TestCase):

    def test_values(self):
        np.testing.assert_allclose(autocorrelation([1.0, 2.0, 3.0], 4), [14.0, 8.0, 3.0, 0.0, 0.0])


class TestLevinsonDurbin(TestCase):

    def test_matches_dense_solve(self):
        frame = np.random.default_rng(0).standard_normal(400)
        r = autocorrelation(frame, 12)
        coefficients, error = levinson_durbin(r, 12)
        dense = np.linalg.solve(toeplitz(r[:12]), -r[1:13])
        self.assertEqual(coefficients[0], 1.0)
        np.testing.assert_allclose(coefficients[1:], dense, atol=1e-8)
        self.assertAlmostEqual(error, float(r[0] + np.dot(dense, r[1:13])), places=8)

    def test_zero_error_stops(self):
        coefficients, error = levinson_durbin([0.0, 0.0, 0.0], 2)
        np.testing.assert_array_equal(coefficients, [1.0, 0.0, 0.0])
        self.assertEqual(error, 0.0)


class TestLPC(TestCase):

    def test_white_noise(self):
        coefficients, _ = lpc(np.random.default_rng(1).standard_normal(20000), 12)
        self.assertLess(float(np.max(np.abs(coefficients[1:]))), 0.05)

    def test_first_order_process(self):
        excitation = np.random.default_rng(2).standard_normal(20000)
        signal = lfilter([1.0], [1.0, -0.9], excitation)
        coefficients, _ = lpc(signal, 1)
        self.assertAlmostEqual(coefficients[1], -0.9, delta=0.02)

    def test_invalid_frames(self):
        with self.assertRaises(MetricError):
            lpc(np.ones(5), 12)
        with self.assertRaises(MetricError):
            lpc(np.zeros(400), 12)
        with self.assertRaises(MetricError):
            lpc(np.ones((20, 2)), 2)


class TestCepstrum(TestCase):

    def test_single_pole(self):
        cepstrum = lpc_to_cepstrum([1.0, -0.5], 6)
        np.testing.assert_allclose(cepstrum, [0.5 ** m / m for m in range(1, 7)], atol=1e-12)

    def test_matches_log_spectrum(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            radii, angles = rng.uniform(0.2, 0.9, 4), rng.uniform(0.0, np.pi, 4)
            poles = np.concatenate([radii * np.exp(1j * angles), radii * np.exp(-1j * angles)])
            predictor = np.real(np.poly(poles))
            log_spectrum = -np.log(np.abs(np.fft.rfft(predictor, 8192)))
            real_cepstrum = np.fft.irfft(log_spectrum, 8192)
            np.testing.assert_allclose(lpc_to_cepstrum(predictor, 16), 2.0 * real_cepstrum[1:17], atol=1e-6)

    def test_flat_predictor(self):
        np.testing.assert_array_equal(lpc_to_cepstrum([1.0, 0.0, 0.0], 4), np.zeros(4))
