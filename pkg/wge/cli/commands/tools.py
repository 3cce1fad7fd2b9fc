""" The `synth-data`, `design-gt` and `gradcheck` commands.
"""
from __future__ import annotations

from os import makedirs, path

from wge.exceptions import GradientCheckError
from wge.logger import LOGGER
from wge.lib.corpus import synth_corpus
from wge.lib.dsp import GammatoneBank, design_gammatone_bank
from wge.lib.tensor import GradCheckReport, run_gradient_suite


def synth_data(seed: int, n_utts: int, duration_s: float, out_dir: str) -> int:
    """ Generate a synthetic corpus and its manifest.

    :return: the exit code
    """
    manifest: str = synth_corpus(out_dir, seed, n_utts, duration_s)
    LOGGER.info('Corpus manifest written to %s', manifest)
    return 0


def design_gt(n_filters: int, f_low: float, f_high: float, width: int, out_path: str) -> int:
    """ Design a Gammatone bank and dump its center frequencies and kernels as CSV.

    :return: the exit code
    """
    bank: GammatoneBank = design_gammatone_bank(n_filters=n_filters, f_low=f_low, f_high=f_high, width=width)
    makedirs(path.dirname(path.abspath(out_path)), exist_ok=True)
    bank.to_frame().to_csv(out_path)
    LOGGER.info('%d filters from %.1f to %.1f Hz written to %s', n_filters, f_low, f_high, out_path)
    return 0


def gradcheck(instances: int, seed: int) -> int:
    """ Run the finite difference suite.

    :return: 0 when every check passes
    :raises GradientCheckError: listing the failing checks
    """
    report: GradCheckReport = run_gradient_suite(instances, seed)
    if not report.passed:
        raise GradientCheckError(report.failures)
    LOGGER.info('All %d gradient checks passed', len(report.errors))
    return 0
