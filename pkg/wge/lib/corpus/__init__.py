""" Corpus handling: manifests, synthetic corpus generation and framed training data.
"""
from .manifest import (
    ManifestEntry, Utterance, load_manifest, write_manifest, load_utterance, noise_offset, SPLITS, MANIFEST_COLUMNS
)
from .synth import synth_corpus, speech_like, make_noise, split_sizes
from .dataset import FramePairs, Dataset, frame_utterances, load_dataset
