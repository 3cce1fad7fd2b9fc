""" Corpus-level evaluation: per-utterance metrics computed concurrently, reduced in utterance order.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np
from pandas import DataFrame

from wge.exceptions import MetricError, SignalError
from wge.logger import LOGGER
from wge.lib.utils import get_worker_count
from .core import seg_snr, llr, cepstral_distance

METRIC_COLUMNS: list[str] = ['utterance_id', 'segsnr_db', 'cd_db', 'llr']


@dataclass
class MetricReport:
    """ Per-utterance metrics, their unweighted means and the utterances that could not be evaluated.

    :param utterances: one row per evaluated utterance with the METRIC_COLUMNS
    :param failures: utterance id mapped to the failure message
    """
    utterances: DataFrame
    failures: dict[str, str] = field(default_factory=dict)

    @property
    def segsnr_db(self) -> float:
        """ Mean segmental SNR """
        return float(np.mean(self.utterances['segsnr_db'].to_numpy(dtype=np.float64)))

    @property
    def cd_db(self) -> float:
        """ Mean cepstral distance """
        return float(np.mean(self.utterances['cd_db'].to_numpy(dtype=np.float64)))

    @property
    def llr(self) -> float:
        """ Mean log-likelihood ratio """
        return float(np.mean(self.utterances['llr'].to_numpy(dtype=np.float64)))

    def means(self) -> dict[str, float]:
        """ The three corpus means. """
        return {'segsnr_db': self.segsnr_db, 'cd_db': self.cd_db, 'llr': self.llr}

    def to_csv(self, filepath: str) -> None:
        """ Write the per-utterance table. """
        self.utterances.to_csv(filepath, index=False, float_format='%.6f')


def evaluate_pair(ref: Any, est: Any) -> dict[str, float]:
    """ The three metrics of one utterance.

    :param ref: the reference
    :param est: the estimate
    :return: a mapping with segsnr_db, cd_db and llr
    """
    return {'segsnr_db': seg_snr(ref, est), 'cd_db': cepstral_distance(ref, est), 'llr': llr(ref, est)}


def evaluate_corpus(pairs: Iterable[tuple[str, Any, Any]], workers: int | None = None) -> MetricReport:
    """ Evaluate (utterance_id, reference, estimate) triples. Failing utterances are logged and excluded from the
    means.

    :param pairs: the triples, in reporting order
    :param workers: number of threads, defaults to the WGE_THREADS cap
    :return: the report
    :raises MetricError: if there are no pairs or none could be evaluated
    """
    items: list[tuple[str, Any, Any]] = list(pairs)
    if not items:
        raise MetricError("Cannot evaluate an empty corpus")

    def evaluate(item: tuple[str, Any, Any]) -> dict[str, float] | str:
        """ Metrics or the failure message of one item. """
        try:
            return evaluate_pair(item[1], item[2])
        except (MetricError, SignalError) as error:
            return str(error)

    with ThreadPoolExecutor(max_workers=workers or get_worker_count()) as executor:
        results: list[dict[str, float] | str] = list(executor.map(evaluate, items))

    rows: list[dict] = []
    failures: dict[str, str] = {}
    for (utterance_id, _, _), result in zip(items, results):
        if isinstance(result, str):
            failures[utterance_id] = result
            LOGGER.warning('Skipping utterance %s: %s', utterance_id, result)
        else:
            rows.append({'utterance_id': utterance_id, **result})
    if failures:
        LOGGER.warning('%d of %d utterances could not be evaluated', len(failures), len(items))
    if not rows:
        raise MetricError("No utterance could be evaluated")
    return MetricReport(DataFrame(rows, columns=METRIC_COLUMNS), failures)
