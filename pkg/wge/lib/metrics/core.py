""" Objective quality metrics between a reference and an estimate: segmental SNR, log-likelihood ratio and
cepstral distance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import toeplitz
from scipy.signal import get_window

from wge.const import (
    SEGSNR_FRAME, SEGSNR_HOP, SEGSNR_CLAMP, LPC_ORDER, N_CEPSTRA, LPC_FRAME, LPC_HOP, CD_CLAMP, ENERGY_FLOOR
)
from wge.exceptions import MetricError
from wge.lib.dsp import samples_of
from .lpc import lpc, lpc_to_cepstrum, autocorrelation

CD_SCALE: float = 10.0 / np.log(10.0)


@dataclass(frozen=True)
class FrameSpec:
    """ Analysis framing of a metric.

    :param frame_len: frame length in samples
    :param hop: hop in samples, 0 < hop <= frame_len
    :param window: 'rectangular' or 'hann'
    """
    frame_len: int
    hop: int
    window: str = 'rectangular'

    def __post_init__(self) -> None:
        """ Check the framing. """
        if self.frame_len < 1 or not 0 < self.hop <= self.frame_len:
            raise MetricError(f"Invalid framing: frame {self.frame_len}, hop {self.hop}")
        if self.window not in ('rectangular', 'hann'):
            raise MetricError(f"Unknown window '{self.window}'")

    def taper(self) -> NDArray[np.float64]:
        """ The analysis window. """
        if self.window == 'rectangular':
            return np.ones(self.frame_len)
        return get_window('hann', self.frame_len)

    def frames(self, signal: Any) -> NDArray[np.float64]:
        """ Windowed analysis frames of a signal: every full frame, or one zero-padded frame for short signals.

        :param signal: the samples
        :return: array of shape (n_frames, frame_len)
        """
        samples: NDArray[np.float64] = samples_of(signal)
        if samples.size < self.frame_len:
            samples = np.pad(samples, (0, self.frame_len - samples.size))
        count: int = 1 + (samples.size - self.frame_len) // self.hop
        starts: NDArray[np.int64] = np.arange(count) * self.hop
        return np.stack([samples[start:start + self.frame_len] for start in starts]) * self.taper()


SEGSNR_SPEC: FrameSpec = FrameSpec(SEGSNR_FRAME, SEGSNR_HOP, 'rectangular')
LPC_SPEC: FrameSpec = FrameSpec(LPC_FRAME, LPC_HOP, 'hann')


def _pair(ref: Any, est: Any) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """ Sample arrays of a reference/estimate pair of equal non-zero length. """
    reference: NDArray[np.float64] = samples_of(ref)
    estimate: NDArray[np.float64] = samples_of(est)
    if reference.shape != estimate.shape or reference.ndim != 1 or reference.size == 0:
        raise MetricError(f"Reference and estimate lengths differ or are empty: {reference.shape} vs {estimate.shape}")
    if not (np.all(np.isfinite(reference)) and np.all(np.isfinite(estimate))):
        raise MetricError("Reference and estimate must be finite")
    return reference, estimate


def _active(frames: NDArray[np.float64]) -> NDArray[np.bool_]:
    """ Frames whose energy reaches the floor. """
    return np.sum(frames * frames, axis=1) >= ENERGY_FLOOR


def seg_snr(ref: Any, est: Any, spec: FrameSpec = SEGSNR_SPEC,
            clamp: tuple[float, float] = SEGSNR_CLAMP) -> float:
    """ Segmental SNR: mean over active reference frames of the clamped per-frame SNR.

    :param ref: the reference
    :param est: the estimate, same length
    :param spec: the framing
    :param clamp: per-frame bounds in dB
    :return: the segmental SNR in dB
    """
    reference, estimate = _pair(ref, est)
    ref_frames: NDArray[np.float64] = spec.frames(reference)
    err_frames: NDArray[np.float64] = ref_frames - spec.frames(estimate)
    active: NDArray[np.bool_] = _active(ref_frames)
    if not np.any(active):
        raise MetricError("The reference is silent")
    signal: NDArray[np.float64] = np.sum(ref_frames[active] ** 2, axis=1)
    noise: NDArray[np.float64] = np.sum(err_frames[active] ** 2, axis=1)
    with np.errstate(divide='ignore'):
        snr: NDArray[np.float64] = 10.0 * np.log10(signal / noise)
    return float(np.mean(np.clip(snr, clamp[0], clamp[1])))


def _predictor(frame: NDArray[np.float64], order: int) -> NDArray[np.float64]:
    """ LPC coefficients of an estimate frame; a silent frame predicts nothing. """
    if np.sum(frame * frame) < ENERGY_FLOOR:
        flat: NDArray[np.float64] = np.zeros(order + 1)
        flat[0] = 1.0
        return flat
    return lpc(frame, order)[0]


def _lpc_frames(ref: Any, est: Any, spec: FrameSpec) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """ Active reference frames and the matching estimate frames. """
    reference, estimate = _pair(ref, est)
    ref_frames: NDArray[np.float64] = spec.frames(reference)
    est_frames: NDArray[np.float64] = spec.frames(estimate)
    active: NDArray[np.bool_] = _active(ref_frames)
    if not np.any(active):
        raise MetricError("The reference is silent")
    return ref_frames[active], est_frames[active]


def llr(ref: Any, est: Any, order: int = LPC_ORDER, spec: FrameSpec = LPC_SPEC) -> float:
    """ Log-likelihood ratio of the estimate predictor against the reference predictor, evaluated on the
    reference autocorrelation, floored at 0 per frame.

    :param ref: the reference
    :param est: the estimate, same length
    :param order: the LPC order
    :param spec: the framing
    :return: the mean LLR
    """
    values: list[float] = []
    for ref_frame, est_frame in zip(*_lpc_frames(ref, est, spec)):
        matrix: NDArray[np.float64] = toeplitz(autocorrelation(ref_frame, order))
        a_ref: NDArray[np.float64] = lpc(ref_frame, order)[0]
        a_est: NDArray[np.float64] = _predictor(est_frame, order)
        ratio: float = float(a_est @ matrix @ a_est) / float(a_ref @ matrix @ a_ref)
        values.append(max(float(np.log(ratio)), 0.0) if ratio > 0 else 0.0)
    return float(np.mean(values))


def frame_cepstral_distance(a_ref: Any, a_est: Any, n_ceps: int = N_CEPSTRA,
                            clamp: tuple[float, float] = CD_CLAMP) -> float:
    """ Cepstral distance in dB between two predictors.

    :param a_ref: reference predictor coefficients
    :param a_est: estimate predictor coefficients
    :param n_ceps: number of cepstral coefficients compared
    :param clamp: bounds in dB
    :return: (10 / ln 10) sqrt(2 sum (c_ref - c_est)^2), clamped
    """
    difference: NDArray[np.float64] = lpc_to_cepstrum(a_ref, n_ceps) - lpc_to_cepstrum(a_est, n_ceps)
    distance: float = CD_SCALE * float(np.sqrt(2.0 * np.sum(difference * difference)))
    return float(np.clip(distance, clamp[0], clamp[1]))


def cepstral_distance(ref: Any, est: Any, order: int = LPC_ORDER, n_ceps: int = N_CEPSTRA,
                      spec: FrameSpec = LPC_SPEC, clamp: tuple[float, float] = CD_CLAMP) -> float:
    """ Mean per-frame cepstral distance between LPC-derived cepstra.

    :param ref: the reference
    :param est: the estimate, same length
    :param order: the LPC order
    :param n_ceps: number of cepstral coefficients
    :param spec: the framing
    :param clamp: per-frame bounds in dB
    :return: the mean distance in dB
    """
    values: list[float] = [
        frame_cepstral_distance(lpc(ref_frame, order)[0], _predictor(est_frame, order), n_ceps, clamp)
        for ref_frame, est_frame in zip(*_lpc_frames(ref, est, spec))
    ]
    return float(np.mean(values))
