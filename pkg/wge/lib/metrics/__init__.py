""" Objective speech quality metrics: segmental SNR, log-likelihood ratio and cepstral distance.
"""
from .lpc import lpc, lpc_to_cepstrum, levinson_durbin, autocorrelation
from .core import FrameSpec, SEGSNR_SPEC, LPC_SPEC, seg_snr, llr, cepstral_distance, frame_cepstral_distance
from .corpus import MetricReport, METRIC_COLUMNS, evaluate_pair, evaluate_corpus
