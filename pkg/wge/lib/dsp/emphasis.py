""" First-order pre-emphasis and its inverse.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.signal import lfilter

from wge.exceptions import SignalError
from .core import Waveform, samples_of, like


def _check_alpha(alpha: float) -> None:
    """ The filters are stable high/low-pass pairs for 0 <= alpha < 1. """
    if not 0.0 <= alpha < 1.0:
        raise SignalError(f"Emphasis coefficient must lie in [0, 1), got {alpha}")


def preemphasis(signal: Waveform | Any, alpha: float, axis: int = -1) -> Waveform | NDArray[np.float64]:
    """ y[n] = x[n] - alpha x[n - 1] with x[-1] = 0.

    :param signal: a Waveform or an array filtered along `axis`
    :param alpha: the coefficient, usually within [0.9, 1)
    :param axis: the time axis of array inputs
    :return: the filtered signal, of the same kind as the input
    """
    _check_alpha(alpha)
    return like(signal, lfilter([1.0, -alpha], [1.0], samples_of(signal), axis=axis))


def deemphasis(signal: Waveform | Any, alpha: float, axis: int = -1) -> Waveform | NDArray[np.float64]:
    """ y[n] = x[n] + alpha y[n - 1] with y[-1] = 0, the inverse of preemphasis.

    :param signal: a Waveform or an array filtered along `axis`
    :param alpha: the coefficient used for the pre-emphasis
    :param axis: the time axis of array inputs
    :return: the filtered signal, of the same kind as the input
    """
    _check_alpha(alpha)
    return like(signal, lfilter([1.0], [1.0, -alpha], samples_of(signal), axis=axis))
