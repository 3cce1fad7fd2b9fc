""" Gammatone auditory filterbank design: ERB bandwidths, ERB-rate spaced center frequencies and FIR kernels used to
initialise the first convolution of the generator and the discriminator.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pandas import DataFrame

from wge.const import (
    SAMPLE_RATE, GAMMATONE_ORDER, GAMMATONE_BANDWIDTH_FACTOR, GAMMATONE_FILTERS, GAMMATONE_F_LOW, GAMMATONE_F_HIGH,
    GAMMATONE_WIDTH
)
from wge.exceptions import SignalError

RESPONSE_POINTS: int = 1024


@dataclass(frozen=True)
class GammatoneBank:
    """ A designed filterbank.

    :param center_freqs: strictly ascending center frequencies in Hz
    :param kernels: array of shape (width, n_filters), one FIR kernel per column
    :param order: the gammatone order
    :param fs: the sampling frequency in Hz
    """
    center_freqs: NDArray[np.float64]
    kernels: NDArray[np.float64]
    order: int
    fs: float

    @property
    def n_filters(self) -> int:
        """ Number of filters """
        return int(self.kernels.shape[1])

    @property
    def width(self) -> int:
        """ Number of taps of every kernel """
        return int(self.kernels.shape[0])

    def to_frame(self) -> DataFrame:
        """ The bank as a pandas DataFrame: one row per filter, its center frequency then its taps. """
        frame: DataFrame = DataFrame(self.kernels.T, columns=[f"tap_{tap:02d}" for tap in range(self.width)])
        frame.insert(0, 'center_hz', self.center_freqs)
        frame.index.name = 'filter'
        return frame


def erb_bandwidth(frequency: Any) -> Any:
    """ Equivalent rectangular bandwidth of the auditory filter centered on a frequency (Glasberg and Moore).

    :param frequency: frequency in Hz, scalar or array, non-negative
    :return: 24.7 * (4.37 * f / 1000 + 1)
    """
    values: NDArray[np.float64] = np.asarray(frequency, dtype=np.float64)
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise SignalError(f"ERB bandwidth requires finite non-negative frequencies, got {frequency}")
    bandwidth: NDArray[np.float64] = 24.7 * (4.37 * values / 1000.0 + 1.0)
    return float(bandwidth) if bandwidth.ndim == 0 else bandwidth


def erb_rate(frequency: Any) -> Any:
    """ ERB-rate scale E(f) = 21.4 log10(1 + 0.00437 f). """
    return 21.4 * np.log10(1.0 + 0.00437 * np.asarray(frequency, dtype=np.float64))


def inverse_erb_rate(rate: Any) -> Any:
    """ Inverse of erb_rate. """
    return (10.0 ** (np.asarray(rate, dtype=np.float64) / 21.4) - 1.0) / 0.00437


def erb_space(f_low: float, f_high: float, n: int, fs: float = SAMPLE_RATE) -> NDArray[np.float64]:
    """ Frequencies equally spaced on the ERB-rate scale, both endpoints included.

    :param f_low: lowest frequency in Hz
    :param f_high: highest frequency in Hz
    :param n: number of frequencies
    :param fs: sampling frequency bounding the range to (0, fs / 2)
    :return: n strictly ascending frequencies within [f_low, f_high]
    """
    if n < 1:
        raise SignalError(f"At least one frequency is required, got n={n}")
    if not 0 < f_low < f_high < fs / 2:
        raise SignalError(f"Invalid frequency range: need 0 < {f_low} < {f_high} < {fs / 2}")
    if n == 1:
        return np.array([float(f_low)])
    frequencies: NDArray[np.float64] = inverse_erb_rate(np.linspace(erb_rate(f_low), erb_rate(f_high), n))
    frequencies[0], frequencies[-1] = f_low, f_high
    return frequencies


def magnitude_response(kernel: Any, n_points: int = RESPONSE_POINTS) -> NDArray[np.float64]:
    """ Magnitude of the zero-padded DFT of a kernel over the non-negative frequencies.

    :param kernel: the FIR taps
    :param n_points: DFT size
    :return: array of n_points // 2 + 1 magnitudes
    """
    return np.abs(np.fft.rfft(np.asarray(kernel, dtype=np.float64), n=n_points))


def peak_frequency(kernel: Any, fs: float = SAMPLE_RATE, n_points: int = RESPONSE_POINTS) -> float:
    """ Frequency at which the magnitude response of a kernel is largest.

    :param kernel: the FIR taps
    :param fs: sampling frequency in Hz
    :param n_points: DFT size
    :return: the peak frequency in Hz
    """
    return float(np.argmax(magnitude_response(kernel, n_points)) * fs / n_points)


def min_resolvable_frequency(fs: float = SAMPLE_RATE, width: int = GAMMATONE_WIDTH) -> float:
    """ Lowest center frequency whose response peak a kernel of this width places near the center. Below it the
    truncated impulse response holds less than a period and the response peaks at DC.

    :param fs: sampling frequency in Hz
    :param width: number of taps
    :return: 1.5 * fs / width
    """
    return 1.5 * fs / width


def gammatone_kernel(center: float, fs: float = SAMPLE_RATE, width: int = GAMMATONE_WIDTH,
                     order: int = GAMMATONE_ORDER) -> NDArray[np.float64]:
    """ Sampled gammatone impulse response, peak-normalised in frequency.

    :param center: center frequency in Hz
    :param fs: sampling frequency in Hz
    :param width: number of taps
    :param order: gammatone order
    :return: the kernel, with max |DFT| = 1
    """
    t: NDArray[np.float64] = np.arange(width) / fs
    bandwidth: float = GAMMATONE_BANDWIDTH_FACTOR * erb_bandwidth(center)
    kernel: NDArray[np.float64] = t ** (order - 1) * np.exp(-2 * np.pi * bandwidth * t) * np.cos(2 * np.pi * center * t)
    peak: float = float(magnitude_response(kernel).max())
    if not peak > 0:
        raise SignalError(f"Degenerate gammatone kernel at {center} Hz")
    return kernel / peak


def design_gammatone_bank(n_filters: int = GAMMATONE_FILTERS, f_low: float = GAMMATONE_F_LOW,
                          f_high: float = GAMMATONE_F_HIGH, fs: float = SAMPLE_RATE,
                          width: int = GAMMATONE_WIDTH, order: int = GAMMATONE_ORDER) -> GammatoneBank:
    """ Design a bank of gammatone kernels with ERB-rate spaced centers.

    :param n_filters: number of filters, one per first-layer feature map
    :param f_low: lowest center frequency in Hz
    :param f_high: highest center frequency in Hz, below fs / 2
    :param fs: sampling frequency in Hz
    :param width: number of taps, the first-layer filter width
    :param order: gammatone order
    :return: the designed bank
    """
    if width < 2:
        raise SignalError(f"Gammatone kernels need at least 2 taps, got {width}")
    centers: NDArray[np.float64] = erb_space(f_low, f_high, n_filters, fs)
    kernels: NDArray[np.float64] = np.stack([gammatone_kernel(c, fs, width, order) for c in centers], axis=1)
    centers.setflags(write=False)
    kernels.setflags(write=False)
    return GammatoneBank(center_freqs=centers, kernels=kernels, order=order, fs=fs)
