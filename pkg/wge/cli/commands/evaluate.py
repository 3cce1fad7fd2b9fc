""" The `evaluate` command.
"""
from __future__ import annotations

from os import makedirs, path

from wge.exceptions import ManifestError
from wge.logger import LOGGER
from wge.lib.metrics import MetricReport, evaluate_corpus
from wge.lib.wav import read_wav
from .enhance import list_wavs


def evaluate(ref_dir: str, est_dir: str, out_path: str) -> int:
    """ Score every estimate against the reference of the same file name and write the metrics CSV.

    :param ref_dir: directory of reference WAV files
    :param est_dir: directory of estimated WAV files
    :param out_path: the metrics CSV
    :return: the exit code
    """
    references: list[str] = list_wavs(ref_dir)
    pairs: list[tuple] = []
    for reference in references:
        name: str = path.basename(reference)
        estimate: str = path.join(est_dir, name)
        if not path.isfile(estimate):
            raise ManifestError(f"No estimate '{estimate}' for reference '{reference}'")
        pairs.append((path.splitext(name)[0], read_wav(reference), read_wav(estimate)))
    report: MetricReport = evaluate_corpus(pairs)
    makedirs(path.dirname(path.abspath(out_path)), exist_ok=True)
    report.to_csv(out_path)
    LOGGER.info('%d utterances: segSNR %.2f dB, CD %.3f dB, LLR %.4f (%d failed)', len(report.utterances),
                report.segsnr_db, report.cd_db, report.llr, len(report.failures))
    return 0
