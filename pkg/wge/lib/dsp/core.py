""" The signal containers of the front-end: mono waveforms and the 50% overlap frame sets cut from them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from wge.const import SAMPLE_RATE
from wge.exceptions import SignalError


@dataclass(frozen=True)
class Waveform:
    """ A mono sample sequence at 16 kHz. Samples are normally within [-1, 1]; that range is enforced when writing
    to disk, the in-memory container only requires finite values.

    :param samples: the 1-D sample array
    :param sample_rate: the sampling frequency in Hz
    """
    samples: NDArray[np.float64]
    sample_rate: int = SAMPLE_RATE

    def __post_init__(self) -> None:
        """ Normalise the samples to a read-only 1-D float64 array and check the invariants. """
        samples: NDArray[np.float64] = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise SignalError(f"A waveform must be one-dimensional, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise SignalError("A waveform must only contain finite samples")
        if self.sample_rate != SAMPLE_RATE:
            raise SignalError(f"Sample rate must be {SAMPLE_RATE} Hz, got {self.sample_rate}")
        samples.setflags(write=False)
        object.__setattr__(self, 'samples', samples)

    def __len__(self) -> int:
        """ Number of samples """
        return int(self.samples.shape[0])

    @property
    def duration(self) -> float:
        """ Duration in seconds """
        return len(self) / self.sample_rate


def samples_of(signal: Waveform | Any) -> NDArray[np.float64]:
    """ Extract the sample array of a Waveform, or convert an array-like.

    :param signal: a Waveform or any real array-like
    :return: a float64 array
    """
    if isinstance(signal, Waveform):
        return signal.samples
    return np.asarray(signal, dtype=np.float64)


def like(reference: Waveform | Any, samples: NDArray[np.float64]) -> Waveform | NDArray[np.float64]:
    """ Wrap samples in a Waveform when the reference input was one. """
    if isinstance(reference, Waveform):
        return Waveform(samples, reference.sample_rate)
    return samples


def frame_count(original_length: int, frame_length: int) -> int:
    """ Number of 50% overlap frames covering a signal: ceil(max(N - L, 0) / hop) + 1.

    :param original_length: the signal length N
    :param frame_length: the frame length L
    :return: the number of frames
    """
    hop: int = frame_length // 2
    return -(-max(original_length - frame_length, 0) // hop) + 1


@dataclass(frozen=True)
class FrameSet:
    """ Rectangular frames of one signal with hop frame_length / 2. The last frame is zero-padded.

    :param frames: array of shape (n_frames, frame_length)
    :param hop: the hop size, half the frame length
    :param original_length: length of the framed signal
    """
    frames: NDArray[np.float64]
    hop: int
    original_length: int

    def __post_init__(self) -> None:
        """ Check the framing invariants and freeze the frame array. """
        frames: NDArray[np.float64] = np.array(self.frames, dtype=np.float64)
        if frames.ndim != 2 or frames.shape[0] < 1:
            raise SignalError(f"Frames must be a non-empty (n_frames, frame_length) array, got {frames.shape}")
        frame_length: int = int(frames.shape[1])
        if frame_length < 2 or frame_length % 2 or self.hop != frame_length // 2:
            raise SignalError(f"Hop {self.hop} must be half of the even frame length {frame_length}")
        if self.original_length < 1:
            raise SignalError("The original length must be positive")
        expected: int = frame_count(self.original_length, frame_length)
        if frames.shape[0] != expected:
            raise SignalError(f"{frames.shape[0]} frames cannot hold {self.original_length} samples "
                              f"({expected} expected)")
        frames.setflags(write=False)
        object.__setattr__(self, 'frames', frames)

    @property
    def frame_length(self) -> int:
        """ Length of every frame """
        return int(self.frames.shape[1])

    @property
    def n_frames(self) -> int:
        """ Number of frames """
        return int(self.frames.shape[0])

    def with_frames(self, frames: Any) -> FrameSet:
        """ Same geometry, new frame contents (e.g. the enhanced frames).

        :param frames: array of the same shape as self.frames
        :return: the new FrameSet
        """
        replaced: NDArray[np.float64] = np.asarray(frames, dtype=np.float64)
        if replaced.shape != self.frames.shape:
            raise SignalError(f"Replacement frames have shape {replaced.shape}, expected {self.frames.shape}")
        return FrameSet(replaced, self.hop, self.original_length)
