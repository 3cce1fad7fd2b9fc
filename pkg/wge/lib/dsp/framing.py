""" Rectangular 50% overlap framing and the overlap-add reconstruction that divides two-frame regions by 2.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import NDArray

from wge.const import FULL_FRAME_LENGTH
from wge.exceptions import SignalError
from .core import Waveform, FrameSet, samples_of, frame_count


def frame_signal(signal: Waveform | Any, frame_length: int = FULL_FRAME_LENGTH) -> FrameSet:
    """ Cut a signal into rectangular frames with hop frame_length / 2, zero-padding the last one.

    :param signal: a Waveform or a 1-D array
    :param frame_length: the frame length, even
    :return: the frame set
    """
    samples: NDArray[np.float64] = samples_of(signal)
    if samples.ndim != 1 or samples.size == 0:
        raise SignalError("Cannot frame an empty or multi-dimensional signal")
    if frame_length < 2 or frame_length % 2:
        raise SignalError(f"Frame length must be even, got {frame_length}")
    hop: int = frame_length // 2
    n_frames: int = frame_count(samples.size, frame_length)
    padded: NDArray[np.float64] = np.zeros((n_frames - 1) * hop + frame_length)
    padded[:samples.size] = samples
    frames: NDArray[np.float64] = np.stack([padded[i * hop:i * hop + frame_length] for i in range(n_frames)])
    return FrameSet(frames, hop, int(samples.size))


def overlap_add(frame_set: FrameSet) -> Waveform:
    """ Sum the frames at their offsets, divide the regions covered by two frames by 2 and truncate.

    :param frame_set: the (possibly processed) frames
    :return: the reconstructed waveform of the original length
    """
    if not isinstance(frame_set, FrameSet):
        raise SignalError(f"overlap_add expects a FrameSet, got {type(frame_set).__name__}")
    hop, frame_length = frame_set.hop, frame_set.frame_length
    total: int = (frame_set.n_frames - 1) * hop + frame_length
    summed: NDArray[np.float64] = np.zeros(total)
    coverage: NDArray[np.float64] = np.zeros(total)
    for index, frame in enumerate(frame_set.frames):
        summed[index * hop:index * hop + frame_length] += frame
        coverage[index * hop:index * hop + frame_length] += 1.0
    return Waveform((summed / coverage)[:frame_set.original_length])
