""" Training data: manifest utterances loaded concurrently and cut into fixed-length frame pairs.

Frames are cut after a whole-utterance pre-emphasis, the same order of operations as inference, so the targets
and the discriminator condition live in the pre-emphasised domain. Raw noisy frames are kept for generators with
their own trainable pre-emphasis layer.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from wge.const import PREEMPH_ALPHA
from wge.exceptions import ManifestError
from wge.logger import LOGGER
from wge.lib.utils import get_worker_count
from wge.lib.dsp import frame_signal, preemphasis
from .manifest import ManifestEntry, Utterance, load_manifest, load_utterance, SPLITS


@dataclass(frozen=True)
class FramePairs:
    """ Aligned frames of one split, each of shape (n_frames, frame_length, 1).

    :param clean: pre-emphasised clean frames, the training targets
    :param noisy: pre-emphasised noisy frames, the discriminator condition and default generator input
    :param noisy_raw: raw noisy frames, the generator input when it owns a pre-emphasis layer
    """
    clean: NDArray[np.float64]
    noisy: NDArray[np.float64]
    noisy_raw: NDArray[np.float64]

    def __len__(self) -> int:
        """ Number of frame pairs """
        return int(self.clean.shape[0])

    def generator_input(self, own_preemphasis: bool) -> NDArray[np.float64]:
        """ The frames fed to the generator. """
        return self.noisy_raw if own_preemphasis else self.noisy

    def take(self, indices: NDArray[np.int64]) -> FramePairs:
        """ A batch of frame pairs. """
        return FramePairs(self.clean[indices], self.noisy[indices], self.noisy_raw[indices])


def frame_utterances(utterances: list[Utterance], frame_length: int, alpha: float = PREEMPH_ALPHA) -> FramePairs:
    """ Cut utterances into frame pairs.

    :param utterances: the loaded utterances
    :param frame_length: the generator input length
    :param alpha: the pre-emphasis coefficient
    :return: the frames of every utterance, in order
    """
    clean, noisy, noisy_raw = [], [], []
    for utterance in utterances:
        clean.append(frame_signal(preemphasis(utterance.clean.samples, alpha), frame_length).frames)
        noisy.append(frame_signal(preemphasis(utterance.noisy.samples, alpha), frame_length).frames)
        noisy_raw.append(frame_signal(utterance.noisy.samples, frame_length).frames)
    if not clean:
        empty: NDArray[np.float64] = np.zeros((0, frame_length, 1))
        return FramePairs(empty, empty, empty)
    return FramePairs(*(np.concatenate(parts)[:, :, np.newaxis] for parts in (clean, noisy, noisy_raw)))


@dataclass
class Dataset:
    """ Loaded utterances per split and their frame pairs.

    :param utterances: split name mapped to its utterances, in manifest order
    :param frame_length: length of the frame pairs
    :param alpha: the pre-emphasis coefficient
    """
    utterances: dict[str, list[Utterance]]
    frame_length: int
    alpha: float = PREEMPH_ALPHA
    _frames: dict[str, FramePairs] = field(default_factory=dict, repr=False)

    def frames(self, split: str) -> FramePairs:
        """ Frame pairs of a split, computed once. """
        if split not in self._frames:
            self._frames[split] = frame_utterances(self.utterances.get(split, []), self.frame_length, self.alpha)
        return self._frames[split]

    def split(self, split: str) -> list[Utterance]:
        """ Utterances of a split. """
        return self.utterances.get(split, [])


def load_dataset(manifest_path: str, frame_length: int, alpha: float = PREEMPH_ALPHA,
                 workers: int | None = None) -> Dataset:
    """ Load every utterance of a manifest.

    :param manifest_path: the TSV manifest
    :param frame_length: the generator input length
    :param alpha: the pre-emphasis coefficient
    :param workers: number of loading threads, defaults to the WGE_THREADS cap
    :return: the dataset
    :raises ManifestError: if the manifest has no training utterance
    """
    entries: list[ManifestEntry] = load_manifest(manifest_path)
    with ThreadPoolExecutor(max_workers=workers or get_worker_count()) as executor:
        loaded: list[Utterance] = list(executor.map(load_utterance, entries))
    utterances: dict[str, list[Utterance]] = {split: [] for split in SPLITS}
    for entry, utterance in zip(entries, loaded):
        utterances[entry.split].append(utterance)
    if not utterances['train']:
        raise ManifestError(f"Manifest '{manifest_path}' has no training utterance")
    LOGGER.info('Loaded %s utterances from %s',
                ', '.join(f"{len(items)} {split}" for split, items in utterances.items()), manifest_path)
    return Dataset(utterances, frame_length, alpha)
