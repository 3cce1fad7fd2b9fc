""" The `enhance` command.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from glob import glob
from os import makedirs, path

from wge.const import SEED_ENHANCE
from wge.exceptions import ManifestError
from wge.logger import LOGGER
from wge.lib.utils import derive_seed, get_worker_count
from wge.lib.checkpoint import load_checkpoint
from wge.lib.wav import read_wav, write_wav
from wge.lib.training import TrainingState, enhance_utterance


def list_wavs(location: str) -> list[str]:
    """ A single WAV file, or the WAV files of a directory sorted by path. """
    if path.isdir(location):
        files: list[str] = sorted(glob(path.join(location, '*.wav')))
        if not files:
            raise ManifestError(f"No WAV file in '{location}'")
        return files
    if not path.isfile(location):
        raise ManifestError(f"'{location}' does not exist")
    return [location]


def enhance(checkpoint_path: str, input_path: str, out_dir: str, seed: int | None = None) -> int:
    """ Enhance one WAV file or every WAV file of a directory.

    :param checkpoint_path: the trained checkpoint
    :param input_path: a WAV file or a directory
    :param out_dir: the output directory, receives files with the input names
    :param seed: seed of the per-frame latents, defaults to the enhance sub-seed of the training seed
    :return: the exit code
    """
    state: TrainingState = TrainingState.from_checkpoint(load_checkpoint(checkpoint_path))
    latent_seed: int = derive_seed(state.config.seed, SEED_ENHANCE) if seed is None else seed
    files: list[str] = list_wavs(input_path)
    makedirs(out_dir, exist_ok=True)

    def process(filepath: str) -> str:
        """ Enhance one file. """
        destination: str = path.join(out_dir, path.basename(filepath))
        write_wav(destination, enhance_utterance(state.gen, read_wav(filepath), latent_seed))
        return destination

    with ThreadPoolExecutor(max_workers=get_worker_count()) as executor:
        for destination in executor.map(process, files):
            LOGGER.info('Wrote %s', destination)
    return 0
