from unittest import TestCase

import numpy as np

from wge.exceptions import SignalError
from wge.lib.dsp import Waveform, mix_at_snr, noise_gain, measured_snr, signal_power


class TestMixing(TestCase):

    def setUp(self):
        rng = np.random.default_rng(0)
        self.clean = Waveform(0.3 * np.sin(np.linspace(0, 200, 8000)))
        self.noise = Waveform(0.1 * rng.standard_normal(9000))

    def test_snr_grid(self):
        for snr in (0.0, 2.5, 5.0, 10.0, 15.0, 17.5):
            noisy = mix_at_snr(self.clean, self.noise, snr)
            self.assertEqual(len(noisy), len(self.clean))
            self.assertAlmostEqual(measured_snr(self.clean, noisy), snr, delta=1e-6)

    def test_zero_db_equal_power(self):
        noisy = mix_at_snr(self.clean, self.noise, 0.0)
        residual = noisy.samples - self.clean.samples
        self.assertAlmostEqual(signal_power(residual), signal_power(self.clean.samples))

    def test_gain_scaling(self):
        self.assertAlmostEqual(noise_gain(self.clean, self.noise, 20.0) * 10, noise_gain(self.clean, self.noise, 0.0))

    def test_errors(self):
        with self.assertRaises(SignalError):
            mix_at_snr(self.clean, self.noise, float('inf'))
        with self.assertRaises(SignalError):
            mix_at_snr(self.clean, self.noise.samples[:100], 5.0)
        with self.assertRaises(SignalError):
            mix_at_snr(np.zeros(10), np.ones(10), 5.0)
        with self.assertRaises(SignalError):
            mix_at_snr(np.ones(10), np.zeros(10), 5.0)
