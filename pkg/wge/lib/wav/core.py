""" RIFF/WAVE codec restricted to 16-bit PCM mono at 16 kHz.
"""
from __future__ import annotations

import warnings
from os import path
from struct import error as StructError
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.io import wavfile

from wge.const import SAMPLE_RATE, PCM_SCALE
from wge.exceptions import WavFormatError
from wge.lib.dsp import Waveform, samples_of

PCM_MAX: int = 32767
PCM_MIN: int = -32768


def to_pcm16(signal: Waveform | Any) -> NDArray[np.int16]:
    """ Float samples to PCM16 by scaling with 32768 and saturating symmetrically at -32768 / 32767.

    :param signal: samples nominally within [-1, 1]
    :return: the integer samples
    """
    scaled: NDArray[np.float64] = np.round(samples_of(signal) * PCM_SCALE)
    return np.clip(scaled, PCM_MIN, PCM_MAX).astype(np.int16)


def from_pcm16(samples: Any) -> Waveform:
    """ PCM16 integers to a float waveform in [-1, 1).

    :param samples: the integer samples
    :return: the waveform
    """
    return Waveform(np.asarray(samples, dtype=np.float64) / PCM_SCALE)


def read_pcm16(filepath: str) -> NDArray[np.int16]:
    """ Read the raw integer payload of a WAV file, rejecting any other format than PCM16 mono 16 kHz.

    :param filepath: the WAV file
    :return: the integer samples
    :raises WavFormatError: on missing files, malformed or truncated containers, wrong encoding, rate or channel
        count
    """
    if not path.isfile(filepath):
        raise WavFormatError(filepath, "file not found")
    try:
        with warnings.catch_warnings():
            # a data chunk shorter than its header declares only raises a warning
            warnings.simplefilter('error', wavfile.WavFileWarning)
            rate, data = wavfile.read(filepath)
    except (ValueError, EOFError, StructError, wavfile.WavFileWarning) as error:
        raise WavFormatError(filepath, f"malformed RIFF/WAVE file ({error})")
    if rate != SAMPLE_RATE:
        raise WavFormatError(filepath, f"sample rate {rate} Hz, expected {SAMPLE_RATE} Hz (resample beforehand)")
    if data.ndim != 1:
        raise WavFormatError(filepath, f"{data.shape[1]} channels, expected mono")
    if data.dtype != np.int16:
        raise WavFormatError(filepath, f"sample type {data.dtype}, expected 16-bit PCM")
    return data


def read_wav(filepath: str) -> Waveform:
    """ Read a PCM16 mono 16 kHz WAV file as a float waveform.

    :param filepath: the WAV file
    :return: the waveform
    """
    return from_pcm16(read_pcm16(filepath))


def write_wav(filepath: str, signal: Waveform | Any) -> None:
    """ Write a waveform as PCM16 mono 16 kHz.

    :param filepath: the destination
    :param signal: the samples; values outside [-1, 1) saturate
    """
    try:
        wavfile.write(filepath, SAMPLE_RATE, to_pcm16(signal))
    except OSError as error:
        raise WavFormatError(filepath, f"cannot be written ({error})")
