from os import path
from tempfile import TemporaryDirectory
from unittest import TestCase

import numpy as np

from wge.exceptions import ManifestError
from wge.lib.dsp import Waveform, preemphasis
from wge.lib.wav import write_wav
from wge.lib.corpus import Dataset, Utterance, frame_utterances, load_dataset, write_manifest


def utterance(name, length, seed):
    rng = np.random.default_rng(seed)
    return Utterance(name, Waveform(rng.uniform(-0.5, 0.5, length)), Waveform(rng.uniform(-0.5, 0.5, length)))


class TestFrames(TestCase):

    def test_frame_pairs(self):
        items = [utterance('a', 100, 0), utterance('b', 64, 1)]
        frames = frame_utterances(items, 32, 0.95)
        self.assertEqual(frames.clean.shape, (6 + 3, 32, 1))
        np.testing.assert_allclose(frames.clean[0, :, 0], preemphasis(items[0].clean.samples, 0.95)[:32])
        np.testing.assert_array_equal(frames.noisy_raw[0, :, 0], items[0].noisy.samples[:32])
        self.assertIs(frames.generator_input(True), frames.noisy_raw)
        self.assertIs(frames.generator_input(False), frames.noisy)
        batch = frames.take(np.array([4, 1]))
        self.assertEqual(len(batch), 2)
        np.testing.assert_array_equal(batch.noisy[1], frames.noisy[1])

    def test_empty_split(self):
        dataset = Dataset({'train': [utterance('a', 100, 0)]}, 32)
        self.assertEqual(len(dataset.frames('test')), 0)
        self.assertEqual(dataset.split('heldout'), [])
        self.assertIs(dataset.frames('train'), dataset.frames('train'))


class TestLoadDataset(TestCase):

    def test_load(self):
        with TemporaryDirectory() as folder:
            rows = []
            for index, split in enumerate(('train', 'train', 'heldout')):
                item = utterance(f'u{index}', 200, index)
                write_wav(path.join(folder, f'c{index}.wav'), item.clean)
                write_wav(path.join(folder, f'n{index}.wav'), item.noisy)
                rows.append({'split': split, 'utterance_id': item.utterance_id, 'clean_path': f'c{index}.wav',
                             'noisy_path': f'n{index}.wav'})
            write_manifest(path.join(folder, 'manifest.tsv'), rows)
            dataset = load_dataset(path.join(folder, 'manifest.tsv'), 32, workers=2)
            self.assertEqual([item.utterance_id for item in dataset.split('train')], ['u0', 'u1'])
            self.assertEqual(len(dataset.split('heldout')), 1)
            self.assertEqual(len(dataset.frames('train')), 24)

            write_manifest(path.join(folder, 'manifest.tsv'), rows[2:])
            with self.assertRaises(ManifestError):
                load_dataset(path.join(folder, 'manifest.tsv'), 32)
