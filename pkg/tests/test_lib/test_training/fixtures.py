import numpy as np

from wge.config import TrainConfig
from wge.lib.corpus import Dataset, Utterance
from wge.lib.dsp import Waveform


def toy_config(**values):
    base = {'n_layers': 2, 'feature_maps': [4, 8], 'input_length': 32, 'filter_width': 5, 'batch_size': 4,
            'epochs': 2, 'seed': 3, 'labsmth': True}
    base.update(values)
    return TrainConfig.from_mapping(base)


def toy_utterance(name, seed, length=200):
    rng = np.random.default_rng(seed)
    t = np.arange(length) / 16000
    clean = 0.4 * np.sin(2 * np.pi * 440 * t + seed) * (0.6 + 0.4 * np.sin(2 * np.pi * 5 * t))
    noisy = clean + 0.1 * rng.standard_normal(length)
    return Utterance(name, Waveform(clean), Waveform(noisy))


def toy_dataset(frame_length=32):
    utterances = {
        'train': [toy_utterance('tr0', 0), toy_utterance('tr1', 1)],
        'heldout': [toy_utterance('he0', 2)],
        'test': []
    }
    return Dataset(utterances, frame_length, 0.95)
