""" Inference on whole utterances: emphasis, framing, per-frame generation, overlap-add and de-emphasis.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import NDArray

from wge.const import SEED_ENHANCE
from wge.exceptions import SignalError
from wge.lib.utils import derive_seed
from wge.lib.dsp import Waveform, FrameSet, samples_of, preemphasis, deemphasis, frame_signal, overlap_add
from wge.lib.model import GeneratorParams, LatentSpec, generator_forward, sample_latent
from wge.lib.metrics import seg_snr
from wge.lib.corpus import Utterance

ENHANCE_BATCH: int = 16


def frame_latents(params: GeneratorParams, latent_seed: int, first: int, count: int) -> NDArray[np.float64]:
    """ Latents of frames first .. first + count - 1, each from its own enhance sub-seed. """
    return np.concatenate([
        sample_latent(LatentSpec.for_config(params.config, derive_seed(latent_seed, SEED_ENHANCE, index)), 1)
        for index in range(first, first + count)
    ])


def enhance_utterance(params: GeneratorParams, noisy: Waveform | Any, latent_seed: int = 0,
                      batch_size: int = ENHANCE_BATCH) -> Waveform:
    """ Enhance a whole utterance of any length.

    :param params: the generator parameters
    :param noisy: the noisy utterance
    :param latent_seed: seed of the per-frame latents
    :param batch_size: number of frames generated together
    :return: the enhanced utterance, of the input length
    """
    samples: NDArray[np.float64] = samples_of(noisy)
    if samples.size == 0:
        raise SignalError("Cannot enhance an empty signal")
    config = params.config
    alpha: float = config.preemph_alpha
    network_input: NDArray[np.float64] = samples if config.flags.use_preemph_layer else preemphasis(samples, alpha)
    frame_set: FrameSet = frame_signal(network_input, config.input_length)

    outputs: list[NDArray[np.float64]] = []
    for first in range(0, frame_set.n_frames, batch_size):
        block: NDArray[np.float64] = frame_set.frames[first:first + batch_size, :, np.newaxis]
        latent: NDArray[np.float64] | None = None
        if config.flags.use_latent:
            latent = frame_latents(params, latent_seed, first, block.shape[0])
        outputs.append(generator_forward(params, block, latent)[:, :, 0])
    enhanced: Waveform = overlap_add(frame_set.with_frames(np.concatenate(outputs)))
    return Waveform(deemphasis(enhanced.samples, alpha))


def evaluate_heldout(params: GeneratorParams | None, utterances: list[Utterance],
                     latent_seed: int = 0) -> tuple[float, float]:
    """ Mean L1 distance to the clean signal and mean segmental SNR over held-out utterances, in the waveform
    domain. Without parameters the noisy input itself is scored (the unprocessed baseline).

    :param params: the generator parameters, or None for the baseline
    :param utterances: the held-out utterances
    :param latent_seed: seed of the per-frame latents
    :return: a tuple (L1, segSNR in dB), NaN when there is no utterance
    """
    if not utterances:
        return float('nan'), float('nan')
    l1_values: list[float] = []
    snr_values: list[float] = []
    for utterance in utterances:
        estimate: Waveform = utterance.noisy if params is None else \
            enhance_utterance(params, utterance.noisy, latent_seed)
        l1_values.append(float(np.mean(np.abs(estimate.samples - utterance.clean.samples))))
        snr_values.append(seg_snr(utterance.clean, estimate))
    return float(np.mean(l1_values)), float(np.mean(snr_values))
