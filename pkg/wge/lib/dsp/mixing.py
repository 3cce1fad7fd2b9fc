""" Additive noise mixing at a prescribed whole-utterance SNR.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import NDArray

from wge.exceptions import SignalError
from .core import Waveform, samples_of


def signal_power(samples: Any) -> float:
    """ Mean squared amplitude. """
    return float(np.mean(np.square(np.asarray(samples, dtype=np.float64))))


def noise_gain(clean: Waveform | Any, noise: Waveform | Any, snr_db: float) -> float:
    """ Gain g such that 10 log10(P_clean / P_(g noise)) = snr_db, powers taken over the clean length.

    :param clean: the clean signal
    :param noise: the noise, at least as long as the clean signal
    :param snr_db: the target SNR in dB, finite
    :return: the noise gain
    """
    clean_samples: NDArray[np.float64] = samples_of(clean)
    noise_samples: NDArray[np.float64] = samples_of(noise)
    if not np.isfinite(snr_db):
        raise SignalError(f"The SNR must be finite, got {snr_db}; use the clean signal directly")
    if clean_samples.size == 0:
        raise SignalError("Cannot mix an empty clean signal")
    if noise_samples.size < clean_samples.size:
        raise SignalError(f"Noise ({noise_samples.size} samples) is shorter than the clean signal "
                          f"({clean_samples.size} samples)")
    clean_power: float = signal_power(clean_samples)
    noise_power: float = signal_power(noise_samples[:clean_samples.size])
    if clean_power <= 0 or noise_power <= 0:
        raise SignalError("Clean and noise signals must have non-zero power")
    return float(np.sqrt(clean_power / (noise_power * 10.0 ** (snr_db / 10.0))))


def mix_at_snr(clean: Waveform | Any, noise: Waveform | Any, snr_db: float) -> Waveform:
    """ Noisy mixture y = x + g w with the noise truncated to the clean length.

    :param clean: the clean signal x
    :param noise: the noise w
    :param snr_db: the target SNR in dB
    :return: the mixture
    """
    clean_samples: NDArray[np.float64] = samples_of(clean)
    gain: float = noise_gain(clean_samples, noise, snr_db)
    return Waveform(clean_samples + gain * samples_of(noise)[:clean_samples.size])


def measured_snr(clean: Waveform | Any, noisy: Waveform | Any) -> float:
    """ Whole-utterance SNR of a mixture against its clean component, in dB. """
    clean_samples: NDArray[np.float64] = samples_of(clean)
    residual: NDArray[np.float64] = samples_of(noisy) - clean_samples
    return float(10.0 * np.log10(signal_power(clean_samples) / signal_power(residual)))
