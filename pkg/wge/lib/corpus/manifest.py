""" Dataset manifests: tab-separated tables of utterances, each either a (clean, noisy) file pair or a recipe
(clean, noise, SNR, seed) mixed on load.
"""
from __future__ import annotations

from dataclasses import dataclass
from os import path
from typing import Any

import numpy as np
from numpy.random import default_rng
from pandas import DataFrame, read_csv, isna

from wge.exceptions import ManifestError
from wge.lib.dsp import Waveform, mix_at_snr
from wge.lib.wav import read_wav

SPLITS: tuple[str, ...] = ('train', 'heldout', 'test')
MANIFEST_COLUMNS: list[str] = [
    'split', 'utterance_id', 'clean_path', 'noisy_path', 'noise_path', 'snr_db', 'seed', 'noise_type'
]
REQUIRED_COLUMNS: list[str] = ['split', 'utterance_id', 'clean_path']


@dataclass(frozen=True)
class ManifestEntry:
    """ One utterance of a manifest. Paths are absolute. """
    split: str
    utterance_id: str
    clean_path: str
    noisy_path: str | None = None
    noise_path: str | None = None
    snr_db: float | None = None
    seed: int | None = None

    @property
    def is_recipe(self) -> bool:
        """ Whether the noisy audio is mixed on load rather than read from a file. """
        return self.noisy_path is None


@dataclass(frozen=True)
class Utterance:
    """ A loaded (clean, noisy) pair. """
    utterance_id: str
    clean: Waveform
    noisy: Waveform


def _optional(value: Any) -> Any:
    """ None for empty table cells. """
    if value is None or (not isinstance(value, str) and isna(value)) or (isinstance(value, str) and not value):
        return None
    return value


def _resolve(base: str, value: Any) -> str | None:
    """ Absolute path of a manifest cell relative to the manifest directory. """
    cell: Any = _optional(value)
    return None if cell is None else path.normpath(path.join(base, str(cell)))


def load_manifest(filepath: str) -> list[ManifestEntry]:
    """ Read and validate a manifest.

    :param filepath: the TSV manifest
    :return: the entries in file order
    :raises ManifestError: on missing columns, unknown splits, incomplete recipes or missing files
    """
    if not path.isfile(filepath):
        raise ManifestError(f"Manifest '{filepath}' does not exist")
    try:
        table: DataFrame = read_csv(filepath, sep='\t', dtype={'utterance_id': str, 'split': str}, keep_default_na=True)
    except Exception as error:
        raise ManifestError(f"Cannot parse manifest '{filepath}': {error}")
    missing: list[str] = [column for column in REQUIRED_COLUMNS if column not in table.columns]
    if missing:
        raise ManifestError(f"Manifest '{filepath}' lacks the columns {missing}")
    for column in MANIFEST_COLUMNS:
        if column not in table.columns:
            table[column] = None

    base: str = path.dirname(path.abspath(filepath))
    entries: list[ManifestEntry] = []
    for row_number, row in enumerate(table.to_dict('records'), start=2):
        if row['split'] not in SPLITS:
            raise ManifestError(f"Line {row_number}: unknown split '{row['split']}', expected one of {SPLITS}")
        entry: ManifestEntry = ManifestEntry(
            split=row['split'],
            utterance_id=str(row['utterance_id']),
            clean_path=str(_resolve(base, row['clean_path'])),
            noisy_path=_resolve(base, row['noisy_path']),
            noise_path=_resolve(base, row['noise_path']),
            snr_db=None if _optional(row['snr_db']) is None else float(row['snr_db']),
            seed=None if _optional(row['seed']) is None else int(row['seed'])
        )
        if entry.is_recipe and (entry.noise_path is None or entry.snr_db is None or entry.seed is None):
            raise ManifestError(f"Line {row_number}: entries need a noisy_path or a noise_path, snr_db and seed")
        for filename in (entry.clean_path, entry.noisy_path if not entry.is_recipe else entry.noise_path):
            if filename is None or not path.isfile(filename):
                raise ManifestError(f"Line {row_number}: file '{filename}' does not exist")
        entries.append(entry)
    if not entries:
        raise ManifestError(f"Manifest '{filepath}' has no entries")
    ids: list[str] = [entry.utterance_id for entry in entries]
    if len(set(ids)) != len(ids):
        raise ManifestError(f"Manifest '{filepath}' has duplicate utterance ids")
    return entries


def write_manifest(filepath: str, rows: list[dict]) -> None:
    """ Write manifest rows (paths relative to the manifest directory) as TSV. """
    DataFrame(rows, columns=MANIFEST_COLUMNS).to_csv(filepath, sep='\t', index=False)


def noise_offset(clean_length: int, noise_length: int, seed: int) -> int:
    """ Start of the noise segment selected by a recipe seed. """
    return int(default_rng(seed).integers(0, noise_length - clean_length + 1))


def load_utterance(entry: ManifestEntry) -> Utterance:
    """ Read a pair or mix a recipe.

    :param entry: the manifest entry
    :return: the loaded utterance
    :raises ManifestError: when the clean and noisy lengths differ or the noise is too short
    """
    clean: Waveform = read_wav(entry.clean_path)
    if not entry.is_recipe:
        noisy: Waveform = read_wav(str(entry.noisy_path))
        if len(noisy) != len(clean):
            raise ManifestError(f"{entry.utterance_id}: clean and noisy lengths differ ({len(clean)}, {len(noisy)})")
        return Utterance(entry.utterance_id, clean, noisy)
    noise: Waveform = read_wav(str(entry.noise_path))
    if len(noise) < len(clean):
        raise ManifestError(f"{entry.utterance_id}: noise is shorter than the clean utterance")
    offset: int = noise_offset(len(clean), len(noise), int(entry.seed or 0))
    segment: np.ndarray = noise.samples[offset:offset + len(clean)]
    return Utterance(entry.utterance_id, clean, mix_at_snr(clean, segment, float(entry.snr_db or 0.0)))
