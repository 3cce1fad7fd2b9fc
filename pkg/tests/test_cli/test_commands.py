from importlib import import_module
from os import path, listdir, makedirs
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

import numpy as np
import yaml
from pandas import read_csv

from wge.cli import main
from wge.cli.commands import list_wavs
from wge.exceptions import ManifestError
from wge.lib.corpus import synth_corpus
from wge.lib.wav import read_wav

SMALL_CONFIG = 'n_layers = 2\nfeature_maps = 4, 8\ninput_length = 64\nfilter_width = 5\nbatch_size = 32\n'


@patch('wge.lib.corpus.synth.LOGGER')
@patch('wge.cli.routes.LOGGER')
class TestCommands(TestCase):

    def setUp(self):
        self.folder = TemporaryDirectory()
        self.root = self.folder.name

    def tearDown(self):
        self.folder.cleanup()

    def write_config(self, extra=''):
        filepath = path.join(self.root, 'train.cfg')
        with open(filepath, 'w') as handle:
            handle.write(SMALL_CONFIG + extra)
        return filepath

    def test_design_gt(self, mock_logger, mock_synth_logger):
        out_path = path.join(self.root, 'bank.csv')
        self.assertEqual(main(['design-gt', '--n', '8', '--out', out_path]), 0)
        bank = read_csv(out_path)
        self.assertEqual(len(bank), 8)
        self.assertEqual(list(bank.columns[:2]), ['filter', 'center_hz'])
        self.assertEqual(len(bank.columns), 2 + 31)

    def test_gradcheck(self, mock_logger, mock_synth_logger):
        with patch('wge.lib.tensor.gradcheck.LOGGER'):
            self.assertEqual(main(['gradcheck', '--instances', '1', '--seed', '3']), 0)

    def test_synth_and_evaluate(self, mock_logger, mock_synth_logger):
        data = path.join(self.root, 'data')
        self.assertEqual(main(['synth-data', '--n', '3', '--dur', '2', '--out', data]), 0)
        self.assertTrue(path.isfile(path.join(data, 'manifest.tsv')))
        clean = path.join(data, 'clean')
        out_path = path.join(self.root, 'eval', 'metrics.csv')
        self.assertEqual(main(['evaluate', '--ref', clean, '--est', clean, '--out', out_path]), 0)
        metrics = read_csv(out_path)
        self.assertEqual(metrics['utterance_id'].tolist(), ['heldout_0000', 'test_0000', 'train_0000'])
        np.testing.assert_allclose(metrics['cd_db'], 0.0, atol=1e-6)
        np.testing.assert_allclose(metrics['segsnr_db'], 35.0)
        self.assertEqual(main(['evaluate', '--ref', clean, '--est', path.join(data, 'noisy'), '--out', out_path]), 0)
        self.assertTrue((read_csv(out_path)['segsnr_db'] < 35.0).all())

    def test_evaluate_missing_estimate(self, mock_logger, mock_synth_logger):
        synth_corpus(path.join(self.root, 'data'), 0, 3, 2.0)
        estimates = path.join(self.root, 'estimates')
        makedirs(estimates)
        code = main(['evaluate', '--ref', path.join(self.root, 'data', 'clean'), '--est', estimates,
                     '--out', path.join(self.root, 'm.csv')])
        self.assertEqual(code, 2)

    def test_train_resume_and_enhance(self, mock_logger, mock_synth_logger):
        manifest = synth_corpus(path.join(self.root, 'data'), 1, 3, 2.0)
        config = self.write_config('epochs = 0\n')
        run = path.join(self.root, 'run')
        with patch('wge.lib.training.core.LOGGER'), patch.object(import_module('wge.cli.commands.train'), 'LOGGER'):
            self.assertEqual(main(['train', '--config', config, '--data', manifest, '--out', run]), 0)
            with open(path.join(run, 'summary.yml')) as handle:
                summary = yaml.safe_load(handle)
            self.assertEqual(summary['status'], 'completed')
            self.assertEqual(summary['epochs_completed'], 0)
            self.assertIsNone(summary['final']['heldout_l1'])

            resumed = path.join(self.root, 'resumed')
            self.assertEqual(main(['train', '--config', self.write_config('epochs = 1\n'), '--data', manifest,
                                   '--out', resumed, '--resume', path.join(run, 'latest.wge')]), 0)
            self.assertEqual(len(read_csv(path.join(resumed, 'history.csv'))), 1)
            self.assertEqual(listdir(path.join(resumed, 'ckpt')), ['epoch_0001.wge'])

        enhanced = path.join(self.root, 'enhanced')
        noisy = path.join(self.root, 'data', 'noisy')
        with patch.object(import_module('wge.cli.commands.enhance'), 'LOGGER'):
            self.assertEqual(main(['enhance', '--ckpt', path.join(resumed, 'latest.wge'), '--in', noisy,
                                   '--out', enhanced, '--seed', '2']), 0)
        self.assertEqual(sorted(listdir(enhanced)), sorted(listdir(noisy)))
        for name in listdir(noisy):
            self.assertEqual(len(read_wav(path.join(enhanced, name))), len(read_wav(path.join(noisy, name))))

    def test_unstable_training(self, mock_logger, mock_synth_logger):
        manifest = synth_corpus(path.join(self.root, 'data'), 1, 3, 2.0)
        config = self.write_config('epochs = 1\nscore_limit = 1e-12\ninstability_window = 1\n')
        with patch('wge.lib.training.core.LOGGER'), patch.object(import_module('wge.cli.commands.train'), 'LOGGER'):
            code = main(['train', '--config', config, '--data', manifest, '--out', path.join(self.root, 'run')])
            with open(path.join(self.root, 'run', 'summary.yml')) as handle:
                summary = yaml.safe_load(handle)
        self.assertEqual(code, 3)
        self.assertEqual(summary['status'], 'unstable')
        self.assertEqual((summary['abort']['epoch'], summary['abort']['step']), (0, 0))

    def test_list_wavs(self, mock_logger, mock_synth_logger):
        with self.assertRaises(ManifestError):
            list_wavs(self.root)
        with self.assertRaises(ManifestError):
            list_wavs(path.join(self.root, 'missing.wav'))
        filepath = path.join(self.root, 'a.wav')
        open(filepath, 'wb').close()
        self.assertEqual(list_wavs(self.root), [filepath])
        self.assertEqual(list_wavs(filepath), [filepath])
