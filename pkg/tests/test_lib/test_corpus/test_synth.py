from os import path
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

import numpy as np
from numpy.random import default_rng

from wge.const import TRAIN_SNRS, TEST_SNRS
from wge.exceptions import ConfigError
from wge.lib.dsp import measured_snr
from wge.lib.corpus import synth_corpus, speech_like, make_noise, split_sizes, load_manifest, load_utterance
from wge.lib.corpus.synth import quantized_mixture


class TestSplitSizes(TestCase):

    def test_sizes(self):
        self.assertEqual(split_sizes(3), {'train': 1, 'heldout': 1, 'test': 1})
        self.assertEqual(split_sizes(30), {'train': 24, 'heldout': 3, 'test': 3})
        self.assertEqual(split_sizes(19), {'train': 17, 'heldout': 1, 'test': 1})
        with self.assertRaises(ConfigError):
            split_sizes(2)


class TestSignals(TestCase):

    def test_speech_like(self):
        first = speech_like(default_rng(1), 8000)
        self.assertAlmostEqual(float(np.sqrt(np.mean(first ** 2))), 1.0, places=9)
        np.testing.assert_array_equal(first, speech_like(default_rng(1), 8000))
        self.assertFalse(np.array_equal(first, speech_like(default_rng(2), 8000)))

    def test_noises(self):
        for kind in ('white', 'pink', 'babble', 'brown', 'machine'):
            noise = make_noise(kind, default_rng(0), 4000)
            self.assertEqual(noise.shape, (4000,))
            self.assertAlmostEqual(float(np.sqrt(np.mean(noise ** 2))), 1.0, places=9, msg=kind)
        with self.assertRaises(ConfigError):
            make_noise('rain', default_rng(0), 100)


class TestQuantizedMixture(TestCase):

    def test_integer_snr(self):
        rng = default_rng(3)
        clean = np.round(3000 * speech_like(rng, 96000)).astype(np.int16)
        noise = 3000 * make_noise('pink', rng, 96000)
        for snr_db in (0.0, 5.0, 12.5):
            noisy = quantized_mixture(clean, noise, snr_db)
            self.assertEqual(noisy.dtype, np.int16)
            residual = noisy.astype(np.float64) - clean
            measured = 10 * np.log10(np.sum(clean.astype(np.float64) ** 2) / np.sum(residual ** 2))
            self.assertAlmostEqual(measured, snr_db, delta=1e-6)


class TestSynthCorpus(TestCase):

    @patch('wge.lib.corpus.synth.LOGGER')
    def test_corpus(self, mock_logger):
        with TemporaryDirectory() as folder:
            manifest = synth_corpus(folder, seed=4, n_utts=3, duration_s=2.0)
            entries = load_manifest(manifest)
            self.assertEqual([entry.split for entry in entries], ['train', 'heldout', 'test'])
            self.assertEqual([entry.utterance_id for entry in entries], ['train_0000', 'heldout_0000', 'test_0000'])
            for entry in entries:
                self.assertTrue(path.isfile(entry.noise_path))
                utterance = load_utterance(entry)
                self.assertEqual(len(utterance.clean), 32000)
                self.assertAlmostEqual(measured_snr(utterance.clean, utterance.noisy), entry.snr_db, delta=1e-6)
                grid = TEST_SNRS if entry.split == 'test' else TRAIN_SNRS
                self.assertLess(min(abs(entry.snr_db - nominal) for nominal in grid), 1e-5)
                self.assertLessEqual(float(np.max(np.abs(utterance.noisy.samples))), 0.9 + 1e-4)
            with open(path.join(folder, 'noisy', 'test_0000.wav'), 'rb') as handle:
                noisy_bytes = handle.read()
        self.assertEqual(mock_logger.info.call_count, 3)
        with TemporaryDirectory() as folder:
            synth_corpus(folder, seed=4, n_utts=3, duration_s=2.0)
            with open(path.join(folder, 'noisy', 'test_0000.wav'), 'rb') as handle:
                self.assertEqual(handle.read(), noisy_bytes)

    def test_invalid_requests(self):
        with TemporaryDirectory() as folder:
            with self.assertRaises(ConfigError):
                synth_corpus(folder, seed=0, n_utts=3, duration_s=1.0)
            with self.assertRaises(ConfigError):
                synth_corpus(folder, seed=0, n_utts=2, duration_s=2.0)
