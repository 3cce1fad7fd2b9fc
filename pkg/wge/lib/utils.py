""" Utility functions shared by the library packages: named sub-seeds and worker pool sizing.
"""
from __future__ import annotations

from os import environ, cpu_count
from zlib import crc32

from numpy.random import Generator, SeedSequence, default_rng


def derive_seed(seed: int, name: str, *indices: int) -> int:
    """ Derive a reproducible 32-bit sub-seed from the root seed, a stream name and optional indices.

    :param seed: the root seed of the run
    :param name: the name of the random stream (e.g. 'latent', 'shuffle')
    :param indices: extra integers that select one member of the stream (e.g. the epoch)
    :return: the derived seed
    """
    entropy: list[int] = [int(seed), crc32(name.encode('utf-8')), *[int(i) for i in indices]]
    return int(SeedSequence(entropy).generate_state(1)[0])


def derive_rng(seed: int, name: str, *indices: int) -> Generator:
    """ Build the random generator of a named stream.

    :param seed: the root seed of the run
    :param name: the name of the random stream
    :param indices: extra integers that select one member of the stream
    :return: a numpy random generator
    """
    return default_rng(derive_seed(seed, name, *indices))


def get_worker_count() -> int:
    """ Number of worker threads allowed for file-level parallelism, capped by the WGE_THREADS variable.

    :return: the number of workers, at least 1
    """
    available: int = cpu_count() or 1
    requested: str | None = environ.get('WGE_THREADS')
    if requested is None or not requested.strip():
        return available
    try:
        return max(1, min(int(requested), available))
    except ValueError:
        return 1
