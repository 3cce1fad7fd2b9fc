""" The wge package trains and applies a waveform-domain adversarial speech enhancer whose first layers can be
initialised with a Gammatone filterbank.

WGE_THREADS also caps the BLAS thread pools when it is set before numpy is first imported.
"""
from os import environ

if environ.get('WGE_THREADS', '').strip().isdigit():
    for _variable in ('OMP_NUM_THREADS', 'OPENBLAS_NUM_THREADS', 'MKL_NUM_THREADS'):
        environ.setdefault(_variable, environ['WGE_THREADS'].strip())

from wge.lib.dsp import design_gammatone_bank, preemphasis, deemphasis, mix_at_snr  # noqa: E402
from wge.lib.training import train_epochs, enhance_utterance  # noqa: E402
from wge.lib.metrics import seg_snr, cepstral_distance, llr  # noqa: E402
