from unittest import TestCase
from unittest.mock import patch
from tempfile import TemporaryDirectory
from os import path

import numpy as np
from pandas import read_csv

from wge.exceptions import MetricError
from wge.lib.metrics import evaluate_corpus, evaluate_pair, METRIC_COLUMNS


def white(seed, length=8000):
    return 0.1 * np.random.default_rng(seed).standard_normal(length)


class TestEvaluateCorpus(TestCase):

    def test_pair(self):
        signal = white(0)
        values = evaluate_pair(signal, signal)
        self.assertEqual(values['segsnr_db'], 35.0)
        self.assertAlmostEqual(values['cd_db'], 0.0, places=9)
        self.assertAlmostEqual(values['llr'], 0.0, places=9)

    def test_report(self):
        pairs = [(f'u{index}', white(index), white(index) + white(index + 10)) for index in range(4)]
        report = evaluate_corpus(pairs, workers=2)
        self.assertEqual(list(report.utterances.columns), METRIC_COLUMNS)
        self.assertEqual(report.utterances['utterance_id'].tolist(), ['u0', 'u1', 'u2', 'u3'])
        self.assertAlmostEqual(report.segsnr_db, float(report.utterances['segsnr_db'].mean()))
        self.assertEqual(set(report.means()), {'segsnr_db', 'cd_db', 'llr'})
        with TemporaryDirectory() as folder:
            report.to_csv(path.join(folder, 'metrics.csv'))
            table = read_csv(path.join(folder, 'metrics.csv'))
        self.assertEqual(len(table), 4)

    def test_order_is_independent_of_workers(self):
        pairs = [(f'u{index}', white(index), white(index) * 0.5 + white(index + 10)) for index in range(5)]
        single = evaluate_corpus(pairs, workers=1)
        many = evaluate_corpus(pairs, workers=4)
        self.assertTrue(single.utterances.equals(many.utterances))

    @patch('wge.lib.metrics.corpus.LOGGER')
    def test_failures_are_skipped(self, mock_logger):
        pairs = [('good', white(0), white(0)), ('silent', np.zeros(8000), white(1)), ('short', white(2), white(3, 10))]
        report = evaluate_corpus(pairs)
        self.assertEqual(report.utterances['utterance_id'].tolist(), ['good'])
        self.assertEqual(set(report.failures), {'silent', 'short'})
        self.assertEqual(mock_logger.warning.call_count, 3)

    def test_nothing_to_evaluate(self):
        with self.assertRaises(MetricError):
            evaluate_corpus([])
        with self.assertRaises(MetricError):
            evaluate_corpus([('silent', np.zeros(8000), np.zeros(8000))])
