""" Synthetic corpus generation: speech-like clean utterances (harmonic series with pitch drift, moving formant
resonances and syllabic modulation) mixed with stationary and modulated noises at fixed SNR grids.

Train and held-out utterances use white, pink and babble-like noise at 0, 5, 10 and 15 dB; test utterances use
brown noise and machine hum, unseen in training, at 2.5, 7.5, 12.5 and 17.5 dB.
"""
from __future__ import annotations

from os import makedirs, path

import numpy as np
from numpy.random import Generator
from numpy.typing import NDArray
from scipy.optimize import brentq
from scipy.signal import lfilter

from wge.const import SAMPLE_RATE, PCM_SCALE, TRAIN_SNRS, TEST_SNRS, TRAIN_NOISES, TEST_NOISES, SEED_CORPUS
from wge.exceptions import ConfigError
from wge.logger import LOGGER
from wge.lib.utils import derive_rng, derive_seed
from wge.lib.dsp import noise_gain, measured_snr
from wge.lib.wav import write_wav, to_pcm16, from_pcm16, PCM_MIN, PCM_MAX
from .manifest import write_manifest, noise_offset

MIN_DURATION: float = 2.0
NOISE_MARGIN: float = 0.5
PEAK_LIMIT: float = 0.9
FORMANTS: tuple[tuple[float, float], ...] = ((700.0, 130.0), (1220.0, 170.0), (2600.0, 250.0))


def _unit_rms(signal: NDArray[np.float64]) -> NDArray[np.float64]:
    """ Scale to unit RMS. """
    return signal / np.sqrt(np.mean(signal * signal))


def speech_like(rng: Generator, n_samples: int, fs: int = SAMPLE_RATE) -> NDArray[np.float64]:
    """ A voiced, speech-like signal.

    :param rng: the random generator
    :param n_samples: length in samples
    :param fs: sampling frequency
    :return: the signal, unit RMS
    """
    t: NDArray[np.float64] = np.arange(n_samples) / fs
    base_pitch: float = rng.uniform(95.0, 220.0)
    drift: NDArray[np.float64] = 1.0 + 0.12 * np.sin(2 * np.pi * rng.uniform(0.2, 0.6) * t + rng.uniform(0, 2 * np.pi))
    pitch: NDArray[np.float64] = base_pitch * drift
    phase: NDArray[np.float64] = 2 * np.pi * np.cumsum(pitch) / fs

    signal: NDArray[np.float64] = np.zeros(n_samples)
    n_harmonics: int = int(4000.0 // (base_pitch * 1.12))
    formant_shift: list[NDArray[np.float64]] = [
        centre * (1.0 + 0.15 * np.sin(2 * np.pi * rng.uniform(1.0, 3.0) * t + rng.uniform(0, 2 * np.pi)))
        for centre, _ in FORMANTS
    ]
    for harmonic in range(1, n_harmonics + 1):
        frequency: NDArray[np.float64] = harmonic * pitch
        envelope: NDArray[np.float64] = sum(
            np.exp(-0.5 * ((frequency - centre) / bandwidth) ** 2)
            for centre, (_, bandwidth) in zip(formant_shift, FORMANTS)
        ) + 0.05 / harmonic
        signal += envelope * np.sin(harmonic * phase)

    syllable_rate: float = rng.uniform(3.0, 5.0)
    syllables: NDArray[np.float64] = np.maximum(np.sin(2 * np.pi * syllable_rate * t + rng.uniform(0, 2 * np.pi)), 0)
    signal *= syllables ** 0.7 + 0.02
    return _unit_rms(signal + 0.01 * rng.standard_normal(n_samples))


def make_noise(kind: str, rng: Generator, n_samples: int, fs: int = SAMPLE_RATE) -> NDArray[np.float64]:
    """ Generate a noise signal of unit RMS.

    :param kind: one of white, pink, babble, brown, machine
    :param rng: the random generator
    :param n_samples: length in samples
    :param fs: sampling frequency
    :return: the noise
    """
    if kind == 'white':
        return _unit_rms(rng.standard_normal(n_samples))
    if kind == 'pink':
        spectrum: NDArray[np.complex128] = np.fft.rfft(rng.standard_normal(n_samples))
        frequencies: NDArray[np.float64] = np.fft.rfftfreq(n_samples, 1.0 / fs)
        spectrum[1:] /= np.sqrt(frequencies[1:])
        spectrum[0] = 0.0
        return _unit_rms(np.fft.irfft(spectrum, n=n_samples))
    if kind == 'babble':
        voices: NDArray[np.float64] = sum(speech_like(rng, n_samples, fs) for _ in range(4))
        t: NDArray[np.float64] = np.arange(n_samples) / fs
        return _unit_rms(voices * (1.0 + 0.5 * np.sin(2 * np.pi * rng.uniform(0.5, 2.0) * t)))
    if kind == 'brown':
        brown: NDArray[np.float64] = lfilter([1.0], [1.0, -0.995], rng.standard_normal(n_samples))
        return _unit_rms(brown - np.mean(brown))
    if kind == 'machine':
        t = np.arange(n_samples) / fs
        fundamental: float = rng.uniform(45.0, 65.0)
        hum: NDArray[np.float64] = sum(np.sin(2 * np.pi * k * fundamental * t + rng.uniform(0, 2 * np.pi)) / k
                                       for k in range(1, 12))
        rattle: NDArray[np.float64] = 1.0 + 0.3 * np.sin(2 * np.pi * rng.uniform(5.0, 12.0) * t)
        return _unit_rms(hum * rattle + 0.2 * rng.standard_normal(n_samples))
    raise ConfigError(f"Unknown noise type '{kind}'")


def quantized_mixture(clean: NDArray[np.int16], noise: NDArray[np.float64], snr_db: float) -> NDArray[np.int16]:
    """ PCM16 mixture of PCM16 clean samples and a noise segment in PCM units. The noise gain is solved on the rounded
    integer residual, so the SNR between the clean file and the noisy file lands on snr_db up to one rounding step.

    :param clean: the quantized clean samples
    :param noise: the noise segment, as long as the clean samples, in PCM units
    :param snr_db: the target SNR in dB
    :return: the quantized noisy samples
    """
    reference: NDArray[np.float64] = clean.astype(np.float64)
    clean_energy: float = float(np.sum(reference * reference))

    def excess(gain: float) -> float:
        """ Measured minus target SNR. """
        residual: NDArray[np.float64] = np.round(gain * noise)
        return 10.0 * np.log10(clean_energy / float(np.sum(residual * residual))) - snr_db

    start: float = noise_gain(reference, noise, snr_db)
    gain: float = brentq(excess, 0.5 * start, 2.0 * start, xtol=1e-12 * start)
    mixture: NDArray[np.float64] = reference + np.round(gain * noise)
    return np.clip(mixture, PCM_MIN, PCM_MAX).astype(np.int16)


def split_sizes(n_utts: int) -> dict[str, int]:
    """ Number of utterances per split: a tenth (at least one) for held-out and for test. """
    if n_utts < 3:
        raise ConfigError(f"A corpus needs at least 3 utterances (train, heldout, test), got {n_utts}")
    reserved: int = max(1, n_utts // 10)
    return {'train': n_utts - 2 * reserved, 'heldout': reserved, 'test': reserved}


def synth_corpus(out_dir: str, seed: int, n_utts: int, duration_s: float) -> str:
    """ Generate a corpus under out_dir: clean/, noise/ and noisy/ WAV files plus manifest.tsv. Every entry is both
    a file pair and the recipe that reproduces its noisy file.

    :param out_dir: the output directory
    :param seed: the root seed; utterance i uses the corpus sub-seed indexed by i
    :param n_utts: total number of utterances
    :param duration_s: duration of every utterance in seconds, at least 2
    :return: the manifest path
    """
    if duration_s < MIN_DURATION:
        raise ConfigError(f"Utterances must last at least {MIN_DURATION} s, got {duration_s}")
    sizes: dict[str, int] = split_sizes(n_utts)
    for folder in ('clean', 'noise', 'noisy'):
        makedirs(path.join(out_dir, folder), exist_ok=True)

    n_samples: int = int(round(duration_s * SAMPLE_RATE))
    n_noise: int = n_samples + int(NOISE_MARGIN * SAMPLE_RATE)
    rows: list[dict] = []
    index: int = 0
    for split, count in sizes.items():
        noises: tuple[str, ...] = TEST_NOISES if split == 'test' else TRAIN_NOISES
        snrs: tuple[float, ...] = TEST_SNRS if split == 'test' else TRAIN_SNRS
        for position in range(count):
            rng: Generator = derive_rng(seed, SEED_CORPUS, index)
            entry_seed: int = derive_seed(seed, SEED_CORPUS, index, 1)
            utterance_id: str = f"{split}_{position:04d}"
            kind: str = noises[position % len(noises)]
            snr_db: float = snrs[(position // len(noises)) % len(snrs)]

            clean: NDArray[np.float64] = 0.1 * speech_like(rng, n_samples)
            noise: NDArray[np.float64] = 0.1 * make_noise(kind, rng, n_noise)
            offset: int = noise_offset(n_samples, n_noise, entry_seed)
            mixture: NDArray[np.float64] = clean + noise_gain(clean, noise[offset:], snr_db) * \
                noise[offset:offset + n_samples]
            scale: float = min(1.0, PEAK_LIMIT / float(np.max(np.abs(mixture))),
                               PEAK_LIMIT / float(np.max(np.abs(noise))))
            names: dict[str, str] = {folder: path.join(folder, f"{utterance_id}.wav")
                                     for folder in ('clean', 'noise', 'noisy')}
            clean_pcm: NDArray[np.int16] = to_pcm16(scale * clean)
            noisy_pcm: NDArray[np.int16] = quantized_mixture(
                clean_pcm, scale * PCM_SCALE * noise[offset:offset + n_samples], snr_db)
            write_wav(path.join(out_dir, names['clean']), from_pcm16(clean_pcm))
            write_wav(path.join(out_dir, names['noise']), scale * noise)
            write_wav(path.join(out_dir, names['noisy']), from_pcm16(noisy_pcm))
            rows.append({
                'split': split, 'utterance_id': utterance_id, 'clean_path': names['clean'],
                'noisy_path': names['noisy'], 'noise_path': names['noise'],
                'snr_db': measured_snr(from_pcm16(clean_pcm), from_pcm16(noisy_pcm)), 'seed': entry_seed,
                'noise_type': kind
            })
            index += 1
        LOGGER.info('Generated %d %s utterances', count, split)

    manifest: str = path.join(out_dir, 'manifest.tsv')
    write_manifest(manifest, rows)
    return manifest
