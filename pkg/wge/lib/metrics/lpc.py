""" Linear prediction by the autocorrelation method and the LPC to cepstrum recursion.

Predictor polynomials follow A(z) = 1 + a[1] z^-1 + ... + a[p] z^-p, so an AR(1) process x[n] = 0.9 x[n-1] + e[n]
has a[1] = -0.9.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import NDArray

from wge.const import ENERGY_FLOOR
from wge.exceptions import MetricError


def autocorrelation(frame: Any, max_lag: int) -> NDArray[np.float64]:
    """ Biased autocorrelation r[0..max_lag] of a frame (lags beyond the frame are zero).

    :param frame: the samples
    :param max_lag: the largest lag
    :return: array of max_lag + 1 values
    """
    samples: NDArray[np.float64] = np.asarray(frame, dtype=np.float64)
    size: int = samples.size
    full: NDArray[np.float64] = np.correlate(samples, samples, mode='full')[size - 1:]
    lags: NDArray[np.float64] = np.zeros(max_lag + 1)
    lags[:min(size, max_lag + 1)] = full[:max_lag + 1]
    return lags


def levinson_durbin(r: Any, order: int) -> tuple[NDArray[np.float64], float]:
    """ Solve the Toeplitz normal equations of linear prediction.

    :param r: autocorrelation values r[0..order], r[0] > 0
    :param order: the predictor order
    :return: a tuple (a[0..order] with a[0] = 1, final prediction error)
    """
    lags: NDArray[np.float64] = np.asarray(r, dtype=np.float64)
    coefficients: NDArray[np.float64] = np.zeros(order + 1)
    coefficients[0] = 1.0
    error: float = float(lags[0])
    for i in range(1, order + 1):
        if error <= 0.0:
            error = 0.0
            break
        accumulated: float = float(lags[i] + np.dot(coefficients[1:i], lags[i - 1:0:-1]))
        reflection: float = -accumulated / error
        coefficients[1:i] = coefficients[1:i] + reflection * coefficients[i - 1:0:-1]
        coefficients[i] = reflection
        error *= 1.0 - reflection * reflection
    return coefficients, max(error, 0.0)


def lpc(frame: Any, order: int) -> tuple[NDArray[np.float64], float]:
    """ Minimum-phase linear predictor of a frame.

    :param frame: the samples, longer than the order
    :param order: the predictor order
    :return: a tuple (a[0..order] with a[0] = 1, prediction error)
    :raises MetricError: for frames too short or with no energy
    """
    samples: NDArray[np.float64] = np.asarray(frame, dtype=np.float64)
    if samples.ndim != 1 or samples.size <= order:
        raise MetricError(f"LPC of order {order} needs a 1-D frame longer than the order, got {samples.shape}")
    r: NDArray[np.float64] = autocorrelation(samples, order)
    if r[0] < ENERGY_FLOOR:
        raise MetricError("LPC of a zero-energy frame")
    return levinson_durbin(r, order)


def lpc_to_cepstrum(a: Any, n_ceps: int) -> NDArray[np.float64]:
    """ Cepstrum of the all-pole model 1 / A(z).

    :param a: predictor coefficients with a[0] = 1
    :param n_ceps: number of cepstral coefficients
    :return: c[1..n_ceps]
    """
    coefficients: NDArray[np.float64] = np.asarray(a, dtype=np.float64)
    order: int = coefficients.size - 1
    cepstrum: NDArray[np.float64] = np.zeros(n_ceps + 1)
    for m in range(1, n_ceps + 1):
        value: float = -coefficients[m] if m <= order else 0.0
        for k in range(max(1, m - order), m):
            value -= (k / m) * cepstrum[k] * coefficients[m - k]
        cepstrum[m] = value
    return cepstrum[1:]
